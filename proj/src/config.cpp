#include "digs/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "digs/errors.hpp"

namespace digs {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw ConfigError(fmt::format("config line {}: {}", line, message));
}

double to_double(std::string_view text, int line) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    fail(line, fmt::format("'{}' is not a number", text));
  }
  return value;
}

long to_integer(std::string_view text, int line) {
  long value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    fail(line, fmt::format("'{}' is not an integer", text));
  }
  return value;
}

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

// Splits "gamma_<j>_<k>" into two levels.
std::optional<std::pair<Level, Level>> element_key(std::string_view key) {
  if (!key.starts_with("gamma_")) return std::nullopt;
  key.remove_prefix(6);
  const auto sep = key.find('_');
  if (sep == std::string_view::npos) return std::nullopt;
  const auto j = parse_level(key.substr(0, sep));
  const auto k = parse_level(key.substr(sep + 1));
  if (!j || !k) return std::nullopt;
  return std::pair{*j, *k};
}

RelaxationModel parse_relaxation(const std::vector<Entry>& entries) {
  RelaxationModel relax(0.0);
  double r_b = 0.0;
  double r_cp = 0.0;
  std::vector<const Entry*> elements;
  std::vector<const Entry*> shorthand;
  for (const Entry& e : entries) {
    if (e.key == "ground") {
      const double g = to_double(e.value, e.line);
      for (Level j : {Level::b, Level::bp, Level::c, Level::cp})
        for (Level k : {Level::b, Level::bp, Level::c, Level::cp}) relax.set(j, k, g);
    } else if (e.key == "gamma_C" || e.key == "gamma_Cp") {
      shorthand.push_back(&e);
    } else if (e.key == "r_b") {
      r_b = to_double(e.value, e.line);
    } else if (e.key == "r_cp") {
      r_cp = to_double(e.value, e.line);
    } else if (element_key(e.key)) {
      elements.push_back(&e);
    } else {
      fail(e.line, fmt::format("unknown relaxation key '{}'", e.key));
    }
  }
  for (const Entry* e : shorthand) {
    const double g = to_double(e->value, e->line);
    if (e->key == "gamma_C") {
      relax.set_gamma_C(g);
    } else {
      relax.set_gamma_Cp(g);
    }
  }
  for (const Entry* e : elements) {
    const auto [j, k] = *element_key(e->key);
    relax.set(j, k, to_double(e->value, e->line));
  }
  relax.set_pumping(r_b, r_cp);
  return relax;
}

using Setter = std::function<void(const Entry&)>;

void apply(const std::vector<Entry>& entries, const std::map<std::string, Setter, std::less<>>& setters,
           std::string_view section) {
  for (const Entry& e : entries) {
    const auto it = setters.find(e.key);
    if (it == setters.end()) fail(e.line, fmt::format("unknown key '{}' in [{}]", e.key, section));
    it->second(e);
  }
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

RunConfig parse_config(std::string_view text) {
  static const std::vector<std::string> kSections = {"", "atom", "relaxation", "medium",
                                                     "doppler", "sweep", "output"};
  std::map<std::string, std::vector<Entry>> sections;
  std::string current;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (std::find(kSections.begin(), kSections.end(), current) == kSections.end()) {
        fail(line_no, fmt::format("unknown section [{}]", current));
      }
      sections[current];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
    Entry e{std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
    if (e.key.empty()) fail(line_no, "empty key");
    auto& bucket = sections[current];
    for (const Entry& prior : bucket) {
      if (prior.key == e.key) fail(line_no, fmt::format("duplicate key '{}'", e.key));
    }
    bucket.push_back(std::move(e));
  }

  RunConfig cfg;
  cfg.relaxation = RelaxationModel(0.0);

  apply(sections[""],
        {{"backend",
          [&](const Entry& e) {
            const auto b = parse_backend(e.value);
            if (!b) fail(e.line, fmt::format("backend must be analytic or numeric, got '{}'", e.value));
            cfg.backend = *b;
          }}},
        "top level");

  AtomParams& a = cfg.atom;
  const auto real = [](double& field) {
    return [&field](const Entry& e) { field = to_double(e.value, e.line); };
  };
  apply(sections["atom"],
        {{"omega_mu", real(a.omega_mu)},
         {"omega_b", real(a.omega_b)},
         {"omega_c", real(a.omega_c)},
         {"omega_p", real(a.omega_p)},
         {"delta_p", real(a.delta_p)},
         {"delta_mu", real(a.delta_mu)},
         {"delta_b", real(a.delta_b)},
         {"delta_c", real(a.delta_c)}},
        "atom");

  cfg.relaxation = parse_relaxation(sections["relaxation"]);

  if (sections.contains("medium")) {
    MediumParams m;
    apply(sections["medium"], {{"density", real(m.density)}, {"wavelength", real(m.wavelength)}},
          "medium");
    cfg.medium = m;
  }

  if (sections.contains("doppler")) {
    DopplerSpec d;
    apply(sections["doppler"],
          {{"sigma_delta", real(d.sigma_delta)},
           {"sigma_probe", real(d.sigma_probe)},
           {"tolerance", real(d.tolerance)},
           {"quadrature_order",
            [&](const Entry& e) { d.quadrature_order = static_cast<int>(to_integer(e.value, e.line)); }},
           {"rule",
            [&](const Entry& e) {
              if (e.value == "adaptive") {
                d.rule = DopplerRule::adaptive;
              } else if (e.value == "hermite") {
                d.rule = DopplerRule::hermite;
              } else {
                fail(e.line, fmt::format("rule must be adaptive or hermite, got '{}'", e.value));
              }
            }}},
          "doppler");
    cfg.doppler = d;
  }

  apply(sections["sweep"],
        {{"min", real(cfg.sweep.min)},
         {"max", real(cfg.sweep.max)},
         {"points",
          [&](const Entry& e) {
            const long p = to_integer(e.value, e.line);
            if (p < 0) fail(e.line, "points must be >= 0");
            cfg.sweep.points = static_cast<std::size_t>(p);
          }}},
        "sweep");

  apply(sections["output"],
        {{"path", [&](const Entry& e) { cfg.output.path = e.value; }},
         {"format",
          [&](const Entry& e) {
            if (e.value == "csv") {
              cfg.output.format = OutputFormat::csv;
            } else if (e.value == "json") {
              cfg.output.format = OutputFormat::json;
            } else {
              fail(e.line, fmt::format("format must be csv or json, got '{}'", e.value));
            }
          }}},
        "output");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string to_config_text(const RunConfig& cfg) {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value, std::string_view note = {}) {
    out += fmt::format("{} = {}", key, value);
    if (!note.empty()) out += fmt::format("  # {}", note);
    out += '\n';
  };

  out += "# Rates and frequencies in units of the a<->b coherence decay gamma_ab.\n";
  line("backend", std::string(backend_name(cfg.backend)), "analytic | numeric");

  const AtomParams& a = cfg.atom;
  out += "\n[atom]\n";
  line("omega_mu", num(a.omega_mu), "control laser Rabi frequency, a<->c");
  line("omega_b", num(a.omega_b), "RF Rabi frequency, b<->b'");
  line("omega_c", num(a.omega_c), "RF Rabi frequency, c<->c'");
  line("omega_p", num(a.omega_p), "probe Rabi frequency, a<->b");
  line("delta_p", num(a.delta_p), "probe detuning");
  line("delta_mu", num(a.delta_mu), "control detuning");
  line("delta_b", num(a.delta_b), "RF detuning, b<->b'");
  line("delta_c", num(a.delta_c), "RF detuning, c<->c'");

  out += "\n[relaxation]\n";
  for (std::size_t j = 0; j < kLevels; ++j) {
    for (std::size_t k = j; k < kLevels; ++k) {
      const Level lj = kAllLevels[j];
      const Level lk = kAllLevels[k];
      line(fmt::format("gamma_{}_{}", level_name(lj), level_name(lk)),
           num(cfg.relaxation.gamma(lj, lk)));
    }
  }
  line("r_b", num(cfg.relaxation.r_b()), "pump rate into |b>");
  line("r_cp", num(cfg.relaxation.r_cp()), "pump rate into |c'>");

  if (cfg.medium) {
    out += "\n[medium]\n";
    line("density", num(cfg.medium->density), "cm^-3");
    line("wavelength", num(cfg.medium->wavelength), "probe vacuum wavelength, cm");
  }
  if (cfg.doppler) {
    const DopplerSpec& d = *cfg.doppler;
    out += "\n[doppler]\n";
    line("sigma_delta", num(d.sigma_delta), "Gaussian width of the two-photon detuning");
    line("sigma_probe", num(d.sigma_probe), "Gaussian width of the probe detuning alone");
    line("quadrature_order", fmt::format("{}", d.quadrature_order), "odd, >= 3");
    line("rule", d.rule == DopplerRule::adaptive ? "adaptive" : "hermite");
    line("tolerance", num(d.tolerance), "adaptive rule, relative");
  }

  out += "\n[sweep]\n";
  line("min", num(cfg.sweep.min), "probe detuning");
  line("max", num(cfg.sweep.max));
  line("points", fmt::format("{}", cfg.sweep.points));

  out += "\n[output]\n";
  line("path", cfg.output.path, "empty: standard output");
  line("format", cfg.output.format == OutputFormat::csv ? "csv" : "json");
  return out;
}

ValidationReport validate(const RunConfig& cfg) {
  ValidationReport report = validate(cfg.atom, cfg.relaxation);
  if (cfg.medium) report.merge(validate(*cfg.medium));
  if (cfg.doppler) report.merge(validate(*cfg.doppler));
  if (cfg.sweep.points < 2) report.failures.push_back("sweep needs at least 2 points");
  if (!(cfg.sweep.min < cfg.sweep.max)) report.failures.push_back("sweep min must be < max");
  if (cfg.backend == Backend::analytic) {
    if (cfg.atom.delta_mu != 0.0 || cfg.atom.delta_c != 0.0) {
      report.failures.push_back(
          "the analytic backend is the closed form for delta_mu = delta_c = 0; use backend = "
          "numeric");
    }
    if (cfg.doppler && cfg.doppler->enabled()) {
      report.failures.push_back("Doppler averaging needs backend = numeric");
    }
  }
  return report;
}

}  // namespace digs

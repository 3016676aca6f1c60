#include "digs/cli.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "digs/config.hpp"
#include "digs/errors.hpp"
#include "digs/presets.hpp"
#include "digs/spectra.hpp"

namespace digs::cli {

namespace {

using nlohmann::ordered_json;

struct Range {
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;
};

// "MIN:MAX:POINTS"
Range parse_range(const std::string& text) {
  const auto first = text.find(':');
  const auto second = text.find(':', first == std::string::npos ? first : first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw ConfigError(fmt::format("range '{}' must look like MIN:MAX:POINTS", text));
  }
  const auto number = [&](std::string_view s) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) {
      throw ConfigError(fmt::format("'{}' in range '{}' is not a number", s, text));
    }
    return v;
  };
  const std::string_view view = text;
  Range r;
  r.min = number(view.substr(0, first));
  r.max = number(view.substr(first + 1, second - first - 1));
  const double points = number(view.substr(second + 1));
  if (points < 2 || points != static_cast<double>(static_cast<std::size_t>(points))) {
    throw ConfigError(fmt::format("range '{}' needs an integer point count >= 2", text));
  }
  r.points = static_cast<std::size_t>(points);
  if (!(r.min < r.max)) throw ConfigError(fmt::format("range '{}' needs MIN < MAX", text));
  return r;
}

// Options shared by sweep and zeros.
struct SourceOptions {
  std::string preset;
  std::string config;
  std::string out;
  std::string format;
  std::string backend;
  std::string grid;
  std::optional<double> sigma_delta;
  std::optional<double> sigma_probe;
  std::optional<double> delta_b;
  std::optional<double> density;
  std::optional<double> wavelength;

  void attach(CLI::App& app) {
    auto* p = app.add_option("--preset", preset, "built-in parameter set (see `presets`)");
    auto* c = app.add_option("--config", config, "configuration file");
    p->excludes(c);
    app.add_option("--out", out, "output file (default: config output path or stdout)");
    app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--backend", backend, "analytic | numeric")
        ->check(CLI::IsMember({"analytic", "numeric"}));
    app.add_option("--grid", grid, "probe-detuning grid MIN:MAX:POINTS");
    app.add_option("--sigma-delta", sigma_delta, "Doppler width of the two-photon detuning");
    app.add_option("--sigma-probe", sigma_probe, "Doppler width of the probe detuning alone");
    app.add_option("--delta-b", delta_b, "RF detuning on b<->b'");
    app.add_option("--density", density, "atomic density, cm^-3");
    app.add_option("--wavelength", wavelength, "probe vacuum wavelength, cm");
  }

  RunConfig resolve(std::ostream& err) const {
    RunConfig cfg;
    if (!preset.empty()) {
      const auto found = find_preset(preset);
      if (!found) throw ConfigError(fmt::format("unknown preset '{}'", preset));
      cfg = *found;
    } else if (!config.empty()) {
      cfg = load_config(config);
    } else {
      throw ConfigError("one of --preset or --config is required");
    }

    if (delta_b) cfg.atom.delta_b = *delta_b;
    if (!grid.empty()) {
      const Range r = parse_range(grid);
      cfg.sweep = SweepGrid{r.min, r.max, r.points};
    }
    if (sigma_delta || sigma_probe) {
      if (!cfg.doppler) cfg.doppler = DopplerSpec{};
      if (sigma_delta) cfg.doppler->sigma_delta = *sigma_delta;
      if (sigma_probe) cfg.doppler->sigma_probe = *sigma_probe;
    }
    if (!backend.empty()) {
      cfg.backend = *parse_backend(backend);
    } else if (cfg.doppler && cfg.doppler->enabled() && cfg.backend == Backend::analytic) {
      err << "note: Doppler averaging selected; switching to the numeric backend\n";
      cfg.backend = Backend::numeric;
    }
    if (density || wavelength) {
      if (!cfg.medium && !(density && wavelength)) {
        throw ConfigError("--density and --wavelength are both needed when the config has no [medium]");
      }
      if (!cfg.medium) cfg.medium = MediumParams{};
      if (density) cfg.medium->density = *density;
      if (wavelength) cfg.medium->wavelength = *wavelength;
    }
    if (!out.empty()) cfg.output.path = out;
    if (!format.empty()) cfg.output.format = format == "csv" ? OutputFormat::csv : OutputFormat::json;

    const ValidationReport report = validate(cfg);
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    if (!report.ok()) {
      std::string message = "invalid configuration:";
      for (const auto& f : report.failures) message += "\n  " + f;
      throw ConfigError(message);
    }
    return cfg;
  }
};

std::string fixed17(double v) { return fmt::format("{:.17g}", v); }

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output.path, std::ios::binary);
  if (!file) throw ConfigError(fmt::format("cannot write '{}'", cfg.output.path));
  file << text;
}

SpectralModel model_for(const RunConfig& cfg) {
  return SpectralModel(cfg.atom, cfg.relaxation, cfg.backend, cfg.doppler);
}

ordered_json zero_record(const AbsorptionZero& z, const std::optional<MediumParams>& medium) {
  ordered_json j;
  j["delta_p_zero"] = z.delta_p_zero;
  j["re_chi"] = z.re_chi_at_zero;
  j["im_chi"] = z.im_chi_at_zero;
  if (medium) {
    const OpticalPoint o = to_optical({z.re_chi_at_zero, 0.0}, *medium);
    j["n"] = o.n;
    j["delta_n"] = o.delta_n;
  } else {
    j["n"] = nullptr;
    j["delta_n"] = nullptr;
  }
  j["bracket"] = {z.bracket.lo, z.bracket.hi};
  j["backend"] = zero_source_name(z.backend);
  return j;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  const SpectralModel model = model_for(cfg);
  const std::vector<double> grid = linspace(cfg.sweep.min, cfg.sweep.max, cfg.sweep.points);
  const Spectrum spectrum = sweep(model, grid);

  std::string text;
  if (cfg.output.format == OutputFormat::csv) {
    text = cfg.medium ? "delta_p,re_chi,im_chi,n,delta_n,alpha\n" : "delta_p,re_chi,im_chi\n";
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      const complex chi = spectrum.chi[i];
      text += fmt::format("{},{},{}", fixed17(spectrum.grid[i]), fixed17(chi.real()),
                          fixed17(chi.imag()));
      if (cfg.medium) {
        const OpticalPoint o = to_optical(chi, *cfg.medium);
        text += fmt::format(",{},{},{}", fixed17(o.n), fixed17(o.delta_n), fixed17(o.alpha));
      }
      text += '\n';
    }
  } else {
    ordered_json doc;
    doc["backend"] = zero_source_name(model.source());
    ordered_json points = ordered_json::array();
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      ordered_json p;
      p["delta_p"] = spectrum.grid[i];
      p["re_chi"] = spectrum.chi[i].real();
      p["im_chi"] = spectrum.chi[i].imag();
      if (cfg.medium) {
        const OpticalPoint o = to_optical(spectrum.chi[i], *cfg.medium);
        p["n"] = o.n;
        p["delta_n"] = o.delta_n;
        p["alpha"] = o.alpha;
      }
      points.push_back(std::move(p));
    }
    doc["points"] = std::move(points);
    text = doc.dump(2) + "\n";
  }
  emit(cfg, text, out);
  return 0;
}

int cmd_zeros(const RunConfig& cfg, const std::vector<std::string>& scan, bool full_axis,
              std::size_t samples, std::ostream& out, std::ostream& err) {
  ZeroOptions options;
  options.samples = samples;
  ordered_json doc;

  if (!scan.empty()) {
    if (scan.size() != 2) throw ConfigError("--scan takes VAR MIN:MAX:POINTS");
    const auto variable = parse_scan_variable(scan[0]);
    if (!variable) throw ConfigError(fmt::format("unknown scan variable '{}' (gamma1 | omega_b)", scan[0]));
    if (cfg.doppler && cfg.doppler->enabled()) {
      throw ConfigError("--scan does not support Doppler averaging");
    }
    const Range r = parse_range(scan[1]);
    const std::vector<double> values = linspace(r.min, r.max, r.points);
    const auto rows =
        zero_trend(cfg.atom, cfg.relaxation, cfg.backend, *variable, values, options);
    doc["scan"] = scan_variable_name(*variable);
    ordered_json table = ordered_json::array();
    for (const TrendRow& row : rows) {
      ordered_json j;
      j["value"] = row.value;
      if (row.zero) {
        const ordered_json z = zero_record(*row.zero, cfg.medium);
        j["delta_p_zero"] = z["delta_p_zero"];
        j["re_chi"] = z["re_chi"];
        j["n"] = z["n"];
        j["delta_n"] = z["delta_n"];
      } else {
        j["delta_p_zero"] = nullptr;
        j["re_chi"] = nullptr;
      }
      table.push_back(std::move(j));
    }
    doc["rows"] = std::move(table);
  } else {
    const SpectralModel model = model_for(cfg);
    std::vector<Bracket> brackets = full_axis ? std::vector<Bracket>{{cfg.sweep.min, cfg.sweep.max}}
                                              : default_brackets(cfg.atom);
    const ZeroSearch found = find_zeros(model, brackets, options);
    for (const auto& w : found.warnings) err << "warning: " << w << '\n';
    ordered_json zeros = ordered_json::array();
    for (const AbsorptionZero& z : found.zeros) zeros.push_back(zero_record(z, cfg.medium));
    ordered_json missing = ordered_json::array();
    for (const Bracket& b : found.no_sign_change) missing.push_back({b.lo, b.hi});
    doc["zeros"] = std::move(zeros);
    doc["no_sign_change"] = std::move(missing);
  }
  emit(cfg, doc.dump(2) + "\n", out);
  return 0;
}

int cmd_presets(const std::string& name, std::ostream& out) {
  bool any = false;
  for (const Preset& p : presets()) {
    if (!name.empty() && p.name != name) continue;
    any = true;
    out << "== " << p.name << ": " << p.description << '\n' << to_config_text(p.config) << '\n';
  }
  if (!any) throw ConfigError(fmt::format("unknown preset '{}'", name));
  return 0;
}

int cmd_index(double re_chi, double im_chi, double density, double wavelength, std::ostream& out,
              std::ostream& err) {
  const MediumParams medium{density, wavelength};
  const ValidationReport report = validate(medium);
  if (!report.ok()) throw ConfigError(report.summary());
  const OpticalPoint o = to_optical({re_chi, im_chi}, medium);
  if (o.absorption_warning) {
    err << "warning: |Im chi_reduced| > 1e-3; the index is only meaningful where absorption is "
           "negligible\n";
  }
  ordered_json j;
  j["re_chi_reduced"] = re_chi;
  j["im_chi_reduced"] = im_chi;
  j["re_chi"] = o.re_chi;
  j["n"] = o.n;
  j["delta_n"] = o.delta_n;
  j["alpha"] = o.alpha;
  j["absorption_warning"] = o.absorption_warning;
  out << j.dump(2) << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak-probe optical response of five-level DIGS atoms"};
  app.require_subcommand(1);

  SourceOptions sweep_opts;
  auto* sweep_cmd = app.add_subcommand("sweep", "susceptibility spectrum as CSV or JSON");
  sweep_opts.attach(*sweep_cmd);

  SourceOptions zero_opts;
  std::vector<std::string> scan;
  bool full_axis = false;
  std::size_t samples = 801;
  auto* zeros_cmd = app.add_subcommand("zeros", "absorption zeros and their index (JSON)");
  zero_opts.attach(*zeros_cmd);
  zeros_cmd->add_option("--scan", scan, "VAR MIN:MAX:POINTS with VAR = gamma1 | omega_b")
      ->expected(2)
      ->allow_extra_args(false);
  zeros_cmd->add_flag("--full-axis", full_axis, "search the whole sweep range instead of the inter-line brackets");
  zeros_cmd->add_option("--samples", samples, "bracketing samples per search interval");

  std::string preset_name;
  auto* presets_cmd = app.add_subcommand("presets", "list built-in parameter sets");
  presets_cmd->add_option("name", preset_name, "show only this preset");

  double re_chi = 0.0;
  double im_chi = 0.0;
  double density = 0.0;
  double wavelength = 0.0;
  auto* index_cmd = app.add_subcommand("index", "refractive index and absorption for one chi value");
  index_cmd->add_option("--re-chi", re_chi, "Re of the reduced susceptibility")->required();
  index_cmd->add_option("--im-chi", im_chi, "Im of the reduced susceptibility");
  index_cmd->add_option("--density", density, "atomic density, cm^-3")->required();
  index_cmd->add_option("--wavelength", wavelength, "probe vacuum wavelength, cm")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  RunConfig cfg;
  try {
    if (*sweep_cmd) cfg = sweep_opts.resolve(err);
    if (*zeros_cmd) cfg = zero_opts.resolve(err);
    if (*presets_cmd) return cmd_presets(preset_name, out);
    if (*index_cmd) return cmd_index(re_chi, im_chi, density, wavelength, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(cfg, out);
    return cmd_zeros(cfg, scan, full_axis, samples, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitBackend;
  }
}

}  // namespace digs::cli

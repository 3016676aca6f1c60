#include "digs/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "digs/errors.hpp"

namespace digs {

namespace {
constexpr std::array<std::string_view, kLevels> kLevelNames = {"a", "b", "bp", "c", "cp"};
}

std::string_view level_name(Level l) { return kLevelNames[index(l)]; }

std::optional<Level> parse_level(std::string_view name) {
  for (Level l : kAllLevels) {
    if (level_name(l) == name) return l;
  }
  return std::nullopt;
}

RelaxationModel::RelaxationModel(double fill) {
  for (auto& row : gamma_) row.fill(fill);
}

RelaxationModel RelaxationModel::figure_default(double ground, double r_b, double r_cp) {
  RelaxationModel m(ground);
  m.set(Level::a, Level::a, 2.0);
  for (Level l : {Level::b, Level::bp, Level::c, Level::cp}) m.set(Level::a, l, 1.0);
  m.set_pumping(r_b, r_cp);
  return m;
}

RelaxationModel& RelaxationModel::set(Level j, Level k, double value) {
  gamma_[index(j)][index(k)] = value;
  gamma_[index(k)][index(j)] = value;
  return *this;
}

RelaxationModel& RelaxationModel::set_pumping(double r_b, double r_cp) {
  r_b_ = r_b;
  r_cp_ = r_cp;
  return *this;
}

RelaxationModel& RelaxationModel::set_gamma_C(double value) {
  set(Level::c, Level::b, value);
  return set(Level::c, Level::bp, value);
}

RelaxationModel& RelaxationModel::set_gamma_Cp(double value) {
  set(Level::cp, Level::b, value);
  return set(Level::cp, Level::bp, value);
}

double RelaxationModel::gamma_C() const {
  const double g = gamma(Level::c, Level::b);
  if (g != gamma(Level::c, Level::bp)) {
    throw DomainError(fmt::format("gamma_C undefined: gamma_cb = {} but gamma_cb' = {}", g,
                                  gamma(Level::c, Level::bp)));
  }
  return g;
}

double RelaxationModel::gamma_Cp() const {
  const double g = gamma(Level::cp, Level::b);
  if (g != gamma(Level::cp, Level::bp)) {
    throw DomainError(fmt::format("gamma_C' undefined: gamma_c'b = {} but gamma_c'b' = {}", g,
                                  gamma(Level::cp, Level::bp)));
  }
  return g;
}

RelaxationModel RelaxationModel::scaled(double factor) const {
  RelaxationModel out = *this;
  for (auto& row : out.gamma_)
    for (double& g : row) g *= factor;
  out.r_b_ *= factor;
  out.r_cp_ *= factor;
  return out;
}

double MediumParams::susceptibility_prefactor() const {
  return 3.0 * density * wavelength * wavelength * wavelength /
         (4.0 * std::numbers::pi * std::numbers::pi);
}

std::string_view backend_name(Backend b) {
  return b == Backend::analytic ? "analytic" : "numeric";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "analytic") return Backend::analytic;
  if (name == "numeric") return Backend::numeric;
  return std::nullopt;
}

void ValidationReport::merge(const ValidationReport& other) {
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
  warnings.insert(warnings.end(), other.warnings.begin(), other.warnings.end());
}

std::string ValidationReport::summary() const {
  std::string out;
  for (const auto& f : failures) out += fmt::format("error: {}\n", f);
  for (const auto& w : warnings) out += fmt::format("warning: {}\n", w);
  return out;
}

ValidationReport validate(const AtomParams& p, const RelaxationModel& relax) {
  ValidationReport report;
  auto& fail = report.failures;
  auto& warn = report.warnings;

  const std::array<std::pair<const char*, double>, 8> fields = {{{"omega_mu", p.omega_mu},
                                                                 {"omega_b", p.omega_b},
                                                                 {"omega_c", p.omega_c},
                                                                 {"omega_p", p.omega_p},
                                                                 {"delta_p", p.delta_p},
                                                                 {"delta_mu", p.delta_mu},
                                                                 {"delta_b", p.delta_b},
                                                                 {"delta_c", p.delta_c}}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) fail.push_back(fmt::format("{} is not finite", name));
  }
  if (!(p.omega_mu > 0.0)) fail.push_back("omega_mu must be > 0");
  if (!(p.omega_b >= 0.0)) fail.push_back("omega_b must be >= 0");
  if (!(p.omega_c >= 0.0)) fail.push_back("omega_c must be >= 0");
  if (!(p.omega_p > 0.0)) fail.push_back("omega_p must be > 0");

  for (Level j : kAllLevels) {
    for (Level k : kAllLevels) {
      const double g = relax.gamma(j, k);
      if (!std::isfinite(g) || g < 0.0) {
        fail.push_back(fmt::format("gamma_{}{} must be finite and >= 0", level_name(j),
                                   level_name(k)));
      }
      if (g != relax.gamma(k, j)) {
        fail.push_back(fmt::format("gamma_{}{} is not symmetric", level_name(j), level_name(k)));
      }
    }
    if (!(relax.gamma(j, j) > 0.0)) {
      fail.push_back(fmt::format("gamma_{0}{0} must be > 0 (no unique steady state)",
                                 level_name(j)));
    }
  }
  if (relax.gamma(Level::a, Level::b) != 1.0) {
    fail.push_back("gamma_ab must equal 1: rates are in units of the a<->b line width");
  }
  if (!std::isfinite(relax.r_b()) || relax.r_b() < 0.0) fail.push_back("r_b must be >= 0");
  if (!std::isfinite(relax.r_cp()) || relax.r_cp() < 0.0) fail.push_back("r_cp must be >= 0");

  double slowest_optical = relax.gamma(Level::a, Level::b);
  double fastest_ground = 0.0;
  for (Level j : {Level::b, Level::bp, Level::c, Level::cp}) {
    slowest_optical = std::min(slowest_optical, relax.gamma(Level::a, j));
    for (Level k : {Level::b, Level::bp, Level::c, Level::cp}) {
      fastest_ground = std::max(fastest_ground, relax.gamma(j, k));
    }
  }
  if (slowest_optical < fastest_ground) {
    warn.push_back(fmt::format(
        "optical coherence decay {} is slower than ground-state decay {}; the model "
        "assumes gamma_aj >> gamma_kl",
        slowest_optical, fastest_ground));
  }
  if (p.omega_c >= p.omega_mu) {
    warn.push_back("omega_c >= omega_mu: outside the omega_c << omega_mu regime");
  }
  if (p.omega_p >= 1e-2) {
    warn.push_back("omega_p >= 1e-2: outside the weak-probe regime");
  }
  return report;
}

ValidationReport validate(const MediumParams& medium) {
  ValidationReport report;
  if (!(medium.density > 0.0) || !std::isfinite(medium.density)) {
    report.failures.push_back("density must be > 0");
  }
  if (!(medium.wavelength > 0.0) || !std::isfinite(medium.wavelength)) {
    report.failures.push_back("wavelength must be > 0");
  }
  return report;
}

ValidationReport validate(const DopplerSpec& spec) {
  ValidationReport report;
  if (!(spec.sigma_delta >= 0.0) || !std::isfinite(spec.sigma_delta)) {
    report.failures.push_back("sigma_delta must be >= 0");
  }
  if (!(spec.sigma_probe >= 0.0) || !std::isfinite(spec.sigma_probe)) {
    report.failures.push_back("sigma_probe must be >= 0");
  }
  if (spec.quadrature_order < 3 || spec.quadrature_order % 2 == 0) {
    report.failures.push_back("quadrature_order must be odd and >= 3");
  }
  if (!(spec.tolerance > 0.0)) report.failures.push_back("tolerance must be > 0");
  return report;
}

bool Spectrum::well_formed() const {
  if (grid.size() != chi.size()) return false;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) return false;
  }
  return std::all_of(chi.begin(), chi.end(), [](const complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

std::vector<double> linspace(double lo, double hi, std::size_t points) {
  if (points < 2) throw DomainError("linspace needs at least 2 points");
  std::vector<double> out(points);
  const double step = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

}  // namespace digs

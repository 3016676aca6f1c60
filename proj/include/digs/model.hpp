#pragma once

// Domain types of the five-level DIGS atom.
//
// Every rate and frequency is a dimensionless multiple of the bare a<->b
// coherence decay gamma_ab. MediumParams is the only dimensional type.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace digs {

using complex = std::complex<double>;

inline constexpr std::size_t kLevels = 5;

// Basis order of every matrix in the library.
enum class Level : std::size_t { a = 0, b = 1, bp = 2, c = 3, cp = 4 };

constexpr std::size_t index(Level l) { return static_cast<std::size_t>(l); }

inline constexpr std::array<Level, kLevels> kAllLevels = {
    Level::a, Level::b, Level::bp, Level::c, Level::cp};

std::string_view level_name(Level l);
std::optional<Level> parse_level(std::string_view name);

// Probe Rabi frequencies at or below this are in the weak-probe regime.
inline constexpr double kWeakProbeLimit = 1e-3;
// Default probe Rabi frequency for numeric susceptibility extraction.
inline constexpr double kDefaultProbeRabi = 1e-4;

struct AtomParams {
  double omega_mu = 2.0;  // control laser, a<->c
  double omega_b = 0.0;   // RF, b<->b'
  double omega_c = 0.0;   // RF, c<->c'
  double omega_p = kDefaultProbeRabi;
  double delta_p = 0.0;
  double delta_mu = 0.0;
  double delta_b = 0.0;
  double delta_c = 0.0;

  // Two-photon detuning; never stored.
  double delta() const { return delta_p - delta_mu; }
  bool weak_probe() const { return omega_p <= kWeakProbeLimit; }

  AtomParams with_probe_detuning(double dp) const {
    AtomParams out = *this;
    out.delta_p = dp;
    return out;
  }

  bool operator==(const AtomParams&) const = default;
};

// Element-wise decay matrix gamma_{jk} plus incoherent pumping into |b> and
// |c'>. gamma_{jj} is the population decay of level j; gamma_{jk} (j != k) the
// decay of the coherence rho_{jk}. Stored symmetric.
class RelaxationModel {
 public:
  using Matrix = std::array<std::array<double, kLevels>, kLevels>;

  RelaxationModel() = default;
  explicit RelaxationModel(double fill);

  // Figure convention: gamma_aa = 2, gamma_aj = 1 (j != a), `ground` for every
  // rate among the four lower levels.
  static RelaxationModel figure_default(double ground, double r_b = 0.0,
                                        double r_cp = 0.0);

  double gamma(Level j, Level k) const { return gamma_[index(j)][index(k)]; }
  const Matrix& matrix() const { return gamma_; }
  double r_b() const { return r_b_; }
  double r_cp() const { return r_cp_; }

  RelaxationModel& set(Level j, Level k, double value);
  RelaxationModel& set_pumping(double r_b, double r_cp);
  // gamma_cb = gamma_cb' = value
  RelaxationModel& set_gamma_C(double value);
  // gamma_c'b = gamma_c'b' = value
  RelaxationModel& set_gamma_Cp(double value);

  // Decoherence between the {b,b'} and {c,c'} subspaces. Throw DomainError
  // when the stored matrix breaks the equality the name implies.
  double gamma_C() const;
  double gamma_Cp() const;

  RelaxationModel scaled(double factor) const;

  bool operator==(const RelaxationModel&) const = default;

 private:
  Matrix gamma_{};
  double r_b_ = 0.0;
  double r_cp_ = 0.0;
};

struct MediumParams {
  double density = 1e15;      // atoms per cm^3
  double wavelength = 8e-5;   // probe vacuum wavelength, cm

  // 3 N lambda^3 / (4 pi^2): Re chi = prefactor * Re chi_reduced.
  double susceptibility_prefactor() const;

  bool operator==(const MediumParams&) const = default;
};

enum class Backend { analytic, numeric };

std::string_view backend_name(Backend b);
std::optional<Backend> parse_backend(std::string_view name);

enum class DopplerRule { adaptive, hermite };

struct DopplerSpec {
  double sigma_delta = 0.0;  // width of the two-photon detuning distribution
  double sigma_probe = 0.0;  // width of the probe-only detuning distribution
  int quadrature_order = 41;
  DopplerRule rule = DopplerRule::adaptive;
  double tolerance = 1e-10;  // adaptive rule: relative change on refinement

  bool enabled() const { return sigma_delta > 0.0 || sigma_probe > 0.0; }

  bool operator==(const DopplerSpec&) const = default;
};

struct ValidationReport {
  std::vector<std::string> failures;
  std::vector<std::string> warnings;

  bool ok() const { return failures.empty(); }
  void merge(const ValidationReport& other);
  std::string summary() const;
};

ValidationReport validate(const AtomParams& params, const RelaxationModel& relax);
ValidationReport validate(const MediumParams& medium);
ValidationReport validate(const DopplerSpec& spec);

struct SpectrumMetadata {
  AtomParams atom;
  RelaxationModel relaxation;
  std::optional<DopplerSpec> doppler;
  Backend backend = Backend::analytic;
};

// chi_reduced sampled on a strictly increasing probe-detuning grid.
struct Spectrum {
  std::vector<double> grid;
  std::vector<complex> chi;
  SpectrumMetadata metadata;

  std::size_t size() const { return grid.size(); }
  // Grid strictly increasing, sizes match, every chi finite.
  bool well_formed() const;
};

std::vector<double> linspace(double lo, double hi, std::size_t points);

}  // namespace digs

#pragma once

// Spectral sweeps, absorption-zero search and conversion of chi_reduced to
// refractive index and absorption.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "digs/model.hpp"

namespace digs {

enum class ZeroSource { analytic, numeric, doppler_averaged };
std::string_view zero_source_name(ZeroSource s);

// chi_reduced(delta_p) for fixed atom/relaxation settings. Construction checks
// the backend's domain: the closed form needs delta_mu = delta_c = 0 and no
// Doppler averaging.
class SpectralModel {
 public:
  SpectralModel(AtomParams atom, RelaxationModel relax, Backend backend,
                std::optional<DopplerSpec> doppler = std::nullopt);

  complex operator()(double delta_p) const;

  const AtomParams& atom() const { return atom_; }
  const RelaxationModel& relaxation() const { return relax_; }
  Backend backend() const { return backend_; }
  const std::optional<DopplerSpec>& doppler() const { return doppler_; }
  ZeroSource source() const;
  SpectrumMetadata metadata() const { return {atom_, relax_, doppler_, backend_}; }

 private:
  AtomParams atom_;
  RelaxationModel relax_;
  Backend backend_;
  std::optional<DopplerSpec> doppler_;
};

// Evaluates every grid point (in parallel; `threads` = 0 picks the hardware
// concurrency). Throws DomainError for a grid that is not strictly increasing
// and rethrows the first backend error; no partial spectrum is returned.
Spectrum sweep(const SpectralModel& model, std::span<const double> grid, unsigned threads = 0);

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

struct AbsorptionZero {
  double delta_p_zero = 0.0;
  double re_chi_at_zero = 0.0;
  double im_chi_at_zero = 0.0;
  Bracket bracket;
  ZeroSource backend = ZeroSource::analytic;
};

struct ZeroSearch {
  std::vector<AbsorptionZero> zeros;        // sorted by delta_p_zero
  std::vector<Bracket> no_sign_change;      // brackets without a zero
  std::vector<std::string> warnings;
};

struct ZeroOptions {
  std::size_t samples = 801;     // bracketing samples per search interval
  double residual_limit = 1e-8;  // |Im chi| accepted at a root
};

// (-Omega_mu/2, -Omega_b/2) and (Omega_b/2, Omega_mu/2): the regions between
// the Autler-Townes absorption lines and the narrow gain lines.
std::vector<Bracket> default_brackets(const AtomParams& params);

// Sign changes of Im chi on a uniform sample of each bracket, refined to
// machine precision with TOMS 748.
ZeroSearch find_zeros(const SpectralModel& model, std::span<const Bracket> brackets,
                      const ZeroOptions& options = {});

// Same, but sign changes are located on an existing spectrum's grid and only
// the refinement calls `model`.
ZeroSearch find_zeros(const Spectrum& spectrum, const SpectralModel& model,
                      std::span<const Bracket> brackets, const ZeroOptions& options = {});

enum class ScanVariable { gamma1, omega_b };
std::optional<ScanVariable> parse_scan_variable(std::string_view name);
std::string_view scan_variable_name(ScanVariable v);

struct TrendRow {
  double value = 0.0;
  std::optional<AbsorptionZero> zero;  // empty: no sign change at this value
};

// Zero in (-Omega_mu/2, -Omega_b/2) nearest the gain line, as a function of
// gamma_1 = gamma_C = gamma_C' or of Omega_b. `values` must be positive and
// strictly increasing.
std::vector<TrendRow> zero_trend(const AtomParams& params, const RelaxationModel& relax,
                                 Backend backend, ScanVariable variable,
                                 std::span<const double> values, const ZeroOptions& options = {});

struct OpticalPoint {
  double re_chi = 0.0;          // dimensional Re chi
  double im_chi = 0.0;          // dimensional Im chi
  double im_chi_reduced = 0.0;  // passthrough
  double n = 1.0;
  double delta_n = 0.0;
  double alpha = 0.0;           // absorption coefficient, 1/cm
  bool absorption_warning = false;  // |Im chi_reduced| > 1e-3: n is not meaningful
};

// n = sqrt(|1 + Re chi|), Re chi = (3 N lambda^3 / 4 pi^2) Re chi_reduced,
// alpha = (pi / lambda) Im chi.
OpticalPoint to_optical(complex chi_reduced, const MediumParams& medium);

// Im chi at `center` minus the mean of Im chi at center +- half_window: the
// sign of a narrow line relative to its local background (< 0 for gain).
double line_contrast(const SpectralModel& model, double center, double half_window);

}  // namespace digs

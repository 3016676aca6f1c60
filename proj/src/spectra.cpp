#include "digs/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include <boost/math/tools/toms748_solve.hpp>
#include <fmt/format.h>

#include "digs/analytic.hpp"
#include "digs/doppler.hpp"
#include "digs/errors.hpp"
#include "digs/liouvillian.hpp"

namespace digs {

namespace {

// Runs body(i) for i in [0, count) on up to `threads` workers; the first
// exception is rethrown after all workers stop.
template <typename Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count && !failed; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            failed = true;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

void check_bracket(const Bracket& b) {
  if (!(b.lo < b.hi)) throw DomainError(fmt::format("empty bracket ({}, {})", b.lo, b.hi));
}

// Refines a sign change of Im chi in [lo, hi] to machine precision.
std::optional<AbsorptionZero> refine(const SpectralModel& model, double lo, double hi,
                                     double f_lo, double f_hi, const Bracket& bracket,
                                     const ZeroOptions& options, ZeroSearch& out) {
  const auto im = [&model](double x) { return model(x).imag(); };
  double root = lo;
  if (f_lo == 0.0) {
    root = lo;
  } else if (f_hi == 0.0) {
    root = hi;
  } else {
    std::uintmax_t iterations = 200;
    const auto tolerance = [](double a, double b) {
      return std::abs(b - a) <= 4.0 * std::numeric_limits<double>::epsilon() *
                                    std::max({std::abs(a), std::abs(b), 1e-300});
    };
    const auto [a, b] =
        boost::math::tools::toms748_solve(im, lo, hi, f_lo, f_hi, tolerance, iterations);
    root = std::abs(im(a)) <= std::abs(im(b)) ? a : b;
  }
  const complex chi = model(root);
  if (!(std::abs(chi.imag()) < options.residual_limit)) {
    out.warnings.push_back(fmt::format(
        "root near delta_p = {:.12g} has residual |Im chi| = {:.3g} above {:.1g}; dropped", root,
        std::abs(chi.imag()), options.residual_limit));
    return std::nullopt;
  }
  return AbsorptionZero{root, chi.real(), chi.imag(), bracket, model.source()};
}

// Flags adjacent samples whose change is more than 10x both neighbouring
// changes: a feature narrower than the sample spacing may hide crossings.
void check_density(std::span<const double> xs, std::span<const double> ys, ZeroSearch& out) {
  double scale = 0.0;
  for (double y : ys) scale = std::max(scale, std::abs(y));
  for (std::size_t i = 1; i + 2 < ys.size(); ++i) {
    const double left = std::abs(ys[i] - ys[i - 1]);
    const double mid = std::abs(ys[i + 1] - ys[i]);
    const double right = std::abs(ys[i + 2] - ys[i + 1]);
    if (mid > 10.0 * std::max(left, right) && mid > 1e-3 * scale) {
      out.warnings.push_back(fmt::format(
          "grid may under-resolve a narrow feature between delta_p = {:.6g} and {:.6g}", xs[i],
          xs[i + 1]));
      return;
    }
  }
}

void search_samples(const SpectralModel& model, std::span<const double> xs,
                    std::span<const double> ys, const Bracket& bracket,
                    const ZeroOptions& options, ZeroSearch& out) {
  check_density(xs, ys, out);
  bool found = false;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    // A sample landing exactly on a root counts only when its neighbours
    // change sign; an identically vanishing spectrum has no zeros.
    const bool crossing = ys[i] == 0.0 ? (i > 0 && ys[i - 1] * ys[i + 1] < 0.0)
                                       : ys[i] * ys[i + 1] < 0.0;
    if (!crossing) continue;
    found = true;
    if (auto z = refine(model, xs[i], xs[i + 1], ys[i], ys[i + 1], bracket, options, out)) {
      out.zeros.push_back(*z);
    }
  }
  if (!found) out.no_sign_change.push_back(bracket);
}

void finish(ZeroSearch& out) {
  std::sort(out.zeros.begin(), out.zeros.end(),
            [](const AbsorptionZero& a, const AbsorptionZero& b) {
              return a.delta_p_zero < b.delta_p_zero;
            });
}

}  // namespace

std::string_view zero_source_name(ZeroSource s) {
  switch (s) {
    case ZeroSource::analytic:
      return "analytic";
    case ZeroSource::numeric:
      return "numeric";
    case ZeroSource::doppler_averaged:
      return "doppler-averaged";
  }
  return "unknown";
}

SpectralModel::SpectralModel(AtomParams atom, RelaxationModel relax, Backend backend,
                             std::optional<DopplerSpec> doppler)
    : atom_(atom), relax_(std::move(relax)), backend_(backend), doppler_(doppler) {
  if (backend_ == Backend::analytic) {
    if (atom_.delta_mu != 0.0 || atom_.delta_c != 0.0) {
      throw DomainError(
          "the analytic backend is the closed form for delta_mu = delta_c = 0; use the numeric "
          "backend");
    }
    if (doppler_ && doppler_->enabled()) {
      throw DomainError("Doppler averaging needs the numeric backend");
    }
  }
  if (doppler_) {
    const ValidationReport report = validate(*doppler_);
    if (!report.ok()) throw DomainError(report.summary());
  }
}

ZeroSource SpectralModel::source() const {
  if (doppler_ && doppler_->enabled()) return ZeroSource::doppler_averaged;
  return backend_ == Backend::analytic ? ZeroSource::analytic : ZeroSource::numeric;
}

complex SpectralModel::operator()(double delta_p) const {
  const AtomParams p = atom_.with_probe_detuning(delta_p);
  if (doppler_ && doppler_->enabled()) return doppler::average_chi(p, relax_, *doppler_, backend_);
  return backend_ == Backend::analytic ? analytic::chi_analytic(p, relax_)
                                       : susceptibility_numeric(p, relax_);
}

Spectrum sweep(const SpectralModel& model, std::span<const double> grid, unsigned threads) {
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("sweep grid must be strictly increasing");
  }
  Spectrum s;
  s.grid.assign(grid.begin(), grid.end());
  s.chi.resize(grid.size());
  s.metadata = model.metadata();
  parallel_for(grid.size(), threads, [&](std::size_t i) { s.chi[i] = model(grid[i]); });
  if (!s.well_formed()) throw Error("sweep produced a non-finite susceptibility");
  return s;
}

std::vector<Bracket> default_brackets(const AtomParams& p) {
  return {{-p.omega_mu / 2.0, -p.omega_b / 2.0}, {p.omega_b / 2.0, p.omega_mu / 2.0}};
}

ZeroSearch find_zeros(const SpectralModel& model, std::span<const Bracket> brackets,
                      const ZeroOptions& options) {
  if (options.samples < 2) throw DomainError("zero search needs at least 2 samples per bracket");
  ZeroSearch out;
  for (const Bracket& bracket : brackets) {
    check_bracket(bracket);
    const std::vector<double> xs = linspace(bracket.lo, bracket.hi, options.samples);
    std::vector<double> ys(xs.size());
    parallel_for(xs.size(), 0, [&](std::size_t i) { ys[i] = model(xs[i]).imag(); });
    search_samples(model, xs, ys, bracket, options, out);
  }
  finish(out);
  return out;
}

ZeroSearch find_zeros(const Spectrum& spectrum, const SpectralModel& model,
                      std::span<const Bracket> brackets, const ZeroOptions& options) {
  ZeroSearch out;
  for (const Bracket& bracket : brackets) {
    check_bracket(bracket);
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
      if (spectrum.grid[i] >= bracket.lo && spectrum.grid[i] <= bracket.hi) {
        xs.push_back(spectrum.grid[i]);
        ys.push_back(spectrum.chi[i].imag());
      }
    }
    if (xs.size() < 2) {
      out.warnings.push_back(fmt::format("bracket ({}, {}) holds fewer than 2 spectrum points",
                                         bracket.lo, bracket.hi));
      out.no_sign_change.push_back(bracket);
      continue;
    }
    search_samples(model, xs, ys, bracket, options, out);
  }
  finish(out);
  return out;
}

std::optional<ScanVariable> parse_scan_variable(std::string_view name) {
  if (name == "gamma1") return ScanVariable::gamma1;
  if (name == "omega_b") return ScanVariable::omega_b;
  return std::nullopt;
}

std::string_view scan_variable_name(ScanVariable v) {
  return v == ScanVariable::gamma1 ? "gamma1" : "omega_b";
}

std::vector<TrendRow> zero_trend(const AtomParams& params, const RelaxationModel& relax,
                                 Backend backend, ScanVariable variable,
                                 std::span<const double> values, const ZeroOptions& options) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || (i > 0 && !(values[i] > values[i - 1]))) {
      throw DomainError("scan values must be positive and strictly increasing");
    }
  }
  std::vector<TrendRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    AtomParams p = params;
    RelaxationModel r = relax;
    if (variable == ScanVariable::gamma1) {
      r.set_gamma_C(v);
      r.set_gamma_Cp(v);
    } else {
      p.omega_b = v;
    }
    const SpectralModel model(p, r, backend);
    const Bracket negative = default_brackets(p).front();
    const ZeroSearch found = find_zeros(model, std::span(&negative, 1), options);
    TrendRow row{v, std::nullopt};
    if (!found.zeros.empty()) row.zero = found.zeros.back();
    rows.push_back(row);
  }
  return rows;
}

OpticalPoint to_optical(complex chi_reduced, const MediumParams& medium) {
  const double prefactor = medium.susceptibility_prefactor();
  OpticalPoint o;
  o.re_chi = prefactor * chi_reduced.real();
  o.im_chi = prefactor * chi_reduced.imag();
  o.im_chi_reduced = chi_reduced.imag();
  o.n = std::sqrt(std::abs(1.0 + o.re_chi));
  o.delta_n = o.n - 1.0;
  o.alpha = std::numbers::pi / medium.wavelength * o.im_chi;
  o.absorption_warning = std::abs(chi_reduced.imag()) > 1e-3;
  return o;
}

double line_contrast(const SpectralModel& model, double center, double half_window) {
  const double at_center = model(center).imag();
  const double background =
      0.5 * (model(center - half_window).imag() + model(center + half_window).imag());
  return at_center - background;
}

}  // namespace digs

#include "digs/liouvillian.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "digs/errors.hpp"

namespace digs {

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_population() const { return rho_.diagonal().real().minCoeff(); }

bool DensityMatrix::physical(double tol) const {
  return hermiticity_error() < tol && min_population() >= -tol &&
         rho_.diagonal().imag().cwiseAbs().maxCoeff() < tol;
}

Matrix5c build_hamiltonian(const AtomParams& p) {
  Matrix5c h = Matrix5c::Zero();
  const auto at = [&h](Level j, Level k) -> complex& { return h(index(j), index(k)); };

  // The "+ h.c." doubles the hbar/2 diagonal, so detunings enter at full weight.
  at(Level::a, Level::a) = p.delta_p;
  at(Level::bp, Level::bp) = p.delta_b;
  at(Level::c, Level::c) = p.delta();
  at(Level::cp, Level::cp) = p.delta() + p.delta_c;

  const auto couple = [&at](Level j, Level k, double rabi) {
    at(j, k) = -rabi / 2.0;
    at(k, j) = -rabi / 2.0;
  };
  couple(Level::a, Level::b, p.omega_p);
  couple(Level::a, Level::c, p.omega_mu);
  couple(Level::bp, Level::b, p.omega_b);
  couple(Level::cp, Level::c, p.omega_c);
  return h;
}

LinearSystem build_equations(const AtomParams& params, const RelaxationModel& relax) {
  const Matrix5c h = build_hamiltonian(params);
  const complex i{0.0, 1.0};

  LinearSystem sys{Matrix25c::Zero(), Vector25c::Zero()};
  for (Level j : kAllLevels) {
    for (Level k : kAllLevels) {
      const int row = vec_index(j, k);
      for (Level m : kAllLevels) {
        // -i (H rho)_jk = -i H_jm rho_mk
        sys.matrix(row, vec_index(m, k)) += -i * h(index(j), index(m));
        // +i (rho H)_jk = +i rho_jm H_mk
        sys.matrix(row, vec_index(j, m)) += i * h(index(m), index(k));
      }
      sys.matrix(row, row) -= relax.gamma(j, k);
    }
  }
  sys.rhs(vec_index(Level::b, Level::b)) = -relax.r_b();
  sys.rhs(vec_index(Level::cp, Level::cp)) = -relax.r_cp();
  return sys;
}

namespace {

using Matrix25d = Eigen::Matrix<double, 25, 25>;
using Vector25d = Eigen::Matrix<double, 25, 1>;

// Real unknowns of a Hermitian rho: Re rho_jk for j <= k, Im rho_jk for j < k.
struct RealSlot {
  int j, k;
  bool imag;
};

const std::array<RealSlot, 25>& real_slots() {
  static const std::array<RealSlot, 25> slots = [] {
    std::array<RealSlot, 25> s{};
    int n = 0;
    for (int j = 0; j < 5; ++j)
      for (int k = j; k < 5; ++k) {
        s[n++] = {j, k, false};
        if (j < k) s[n++] = {j, k, true};
      }
    return s;
  }();
  return slots;
}

}  // namespace

DensityMatrix solve_steady_state(const LinearSystem& system) {
  // Equations (j,k) and (k,j) are conjugates of each other for a Liouvillian,
  // so the Re/Im parts of the upper-triangle equations in the 25 real
  // unknowns carry the whole system at a quarter of the complex LU cost. The
  // complex residual below still checks the result against the full system.
  const auto& slots = real_slots();
  Matrix25d a;
  Vector25d b;
  for (int col = 0; col < 25; ++col) {
    const RealSlot& s = slots[col];
    const int upper = 5 * s.j + s.k;
    const int lower = 5 * s.k + s.j;
    Vector25c column;
    if (s.j == s.k) {
      column = system.matrix.col(upper);
    } else if (!s.imag) {
      column = system.matrix.col(upper) + system.matrix.col(lower);
    } else {
      column = complex{0.0, 1.0} * (system.matrix.col(upper) - system.matrix.col(lower));
    }
    for (int row = 0; row < 25; ++row) {
      const RealSlot& r = slots[row];
      const complex v = column(5 * r.j + r.k);
      a(row, col) = r.imag ? v.imag() : v.real();
    }
  }
  for (int row = 0; row < 25; ++row) {
    const RealSlot& r = slots[row];
    const complex v = system.rhs(5 * r.j + r.k);
    b(row) = r.imag ? v.imag() : v.real();
  }

  const Eigen::PartialPivLU<Matrix25d> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-14)) {
    throw SingularSystem(fmt::format("steady-state system is singular (rcond = {:.3g})", rcond));
  }
  const Vector25d y = lu.solve(b);
  Vector25c x;
  for (int n = 0; n < 25; ++n) {
    const RealSlot& s = slots[n];
    if (s.imag) continue;
    const double im = s.j < s.k ? y(n + 1) : 0.0;
    x(5 * s.j + s.k) = {y(n), im};
    x(5 * s.k + s.j) = {y(n), -im};
  }

  const double scale = std::max(system.rhs.cwiseAbs().maxCoeff(), 1e-30);
  const double residual = (system.matrix * x - system.rhs).cwiseAbs().maxCoeff() / scale;
  if (!(residual < 1e-10)) {
    throw SingularSystem(fmt::format("steady-state residual {:.3g} exceeds 1e-10", residual));
  }

  Matrix5c rho;
  for (Level j : kAllLevels)
    for (Level k : kAllLevels) rho(index(j), index(k)) = x(vec_index(j, k));
  return DensityMatrix(rho);
}

DensityMatrix steady_state(const AtomParams& params, const RelaxationModel& relax) {
  return solve_steady_state(build_equations(params, relax));
}

complex susceptibility_numeric(const AtomParams& params, const RelaxationModel& relax) {
  if (!params.weak_probe()) {
    throw DomainError(fmt::format(
        "numeric susceptibility needs a weak probe (omega_p <= {}), got {}", kWeakProbeLimit,
        params.omega_p));
  }
  const DensityMatrix rho = steady_state(params, relax);
  return 2.0 * relax.gamma(Level::a, Level::b) * rho(Level::a, Level::b) / params.omega_p;
}

double excited_population(const AtomParams& params, const RelaxationModel& relax) {
  return steady_state(params, relax).population(Level::a);
}

double excited_population_estimate(const AtomParams& p, const RelaxationModel& relax) {
  const double g_aa = relax.gamma(Level::a, Level::a);
  const double g_ab = relax.gamma(Level::a, Level::b);
  const double g_bb = relax.gamma(Level::b, Level::b);
  const double g_acp = relax.gamma(Level::a, Level::cp);
  const double g_cpcp = relax.gamma(Level::cp, Level::cp);
  const double ratio = p.omega_c / p.omega_mu;

  const double probe_part = (p.omega_p * p.omega_p / (4.0 * g_aa * g_ab)) * relax.r_b() / (2.0 * g_bb);
  const double control_part =
      (p.omega_mu / (4.0 * g_aa)) * ratio * relax.r_cp() / (2.0 * g_acp * ratio * ratio + g_cpcp);
  return probe_part + control_part;
}

}  // namespace digs

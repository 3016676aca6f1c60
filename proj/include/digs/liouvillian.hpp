#pragma once

// Rotating-frame Hamiltonian, open-system steady state, and the numeric
// reduced susceptibility. Valid for arbitrary detunings.

#include <Eigen/Dense>

#include "digs/model.hpp"

namespace digs {

using Matrix5c = Eigen::Matrix<complex, 5, 5>;
using Matrix25c = Eigen::Matrix<complex, 25, 25>;
using Vector25c = Eigen::Matrix<complex, 25, 1>;

// Row-major position of rho_{jk} in the vectorized system.
constexpr int vec_index(Level j, Level k) {
  return static_cast<int>(index(j) * kLevels + index(k));
}

class DensityMatrix {
 public:
  DensityMatrix() : rho_(Matrix5c::Zero()) {}
  explicit DensityMatrix(const Matrix5c& rho) : rho_(rho) {}

  complex operator()(Level j, Level k) const { return rho_(index(j), index(k)); }
  double population(Level j) const { return rho_(index(j), index(j)).real(); }
  const Matrix5c& matrix() const { return rho_; }

  // max |rho - rho^dagger|
  double hermiticity_error() const;
  // Smallest real part on the diagonal.
  double min_population() const;
  complex trace() const { return rho_.trace(); }

  // Hermitian within `tol`, populations >= -tol, diagonal imaginary parts
  // below `tol`.
  bool physical(double tol = 1e-10) const;

 private:
  Matrix5c rho_;
};

// A x = rhs with x the row-major vectorization of rho.
struct LinearSystem {
  Matrix25c matrix;
  Vector25c rhs;
};

// H / hbar in units of gamma_ab. Diagonal [dp, 0, db, delta, delta + dc].
Matrix5c build_hamiltonian(const AtomParams& params);

// 0 = -i[H, rho]_jk - gamma_jk rho_jk + r_b d_jb d_kb + r_c' d_jc' d_kc'
LinearSystem build_equations(const AtomParams& params, const RelaxationModel& relax);

// Dense LU with partial pivoting. Throws SingularSystem on rank deficiency or
// when the relative residual exceeds 1e-10.
DensityMatrix solve_steady_state(const LinearSystem& system);

DensityMatrix steady_state(const AtomParams& params, const RelaxationModel& relax);

// chi_reduced = 2 gamma_ab rho_ab / Omega_p at params.delta_p. Im > 0 is
// absorption. Throws DomainError outside the weak-probe regime.
complex susceptibility_numeric(const AtomParams& params, const RelaxationModel& relax);

// rho_aa of the full steady state.
double excited_population(const AtomParams& params, const RelaxationModel& relax);

// Order-of-magnitude estimate of rho_aa for a weak probe and Omega_c << Omega_mu:
//   (Op^2 / (4 g_aa g_ab)) r_b / (2 g_bb)
//     + (Om / (4 g_aa)) (Oc / Om) r_c' / (2 g_ac' (Oc/Om)^2 + g_c'c')
double excited_population_estimate(const AtomParams& params, const RelaxationModel& relax);

}  // namespace digs

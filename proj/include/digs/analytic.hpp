#pragma once

// Closed-form weak-probe susceptibility chi = X+ - X- of the resonant DIGS
// system (Delta_mu = Delta_c = 0) and its auxiliary formulas. Populations are
// the probe-free, lowest-order-in-(Omega_c/Omega_mu) expressions.

#include "digs/model.hpp"

namespace digs::analytic {

// Dimensionless combinations, all frequencies scaled by Omega_mu.
struct ReducedParams {
  double eta = 0.0;   // 2 gamma_ab / Omega_mu
  double c = 0.0;     // Omega_c / Omega_mu
  double b = 0.0;     // sqrt(Omega_b^2 + Delta_b^2) / Omega_mu
  double eps1 = 0.0;  // 2 gamma_C / Omega_mu
  double eps2 = 0.0;  // 2 gamma_C' / Omega_mu
  double a = 0.0;     // (Delta_p - Delta_b / 2) / Omega_mu
  double a_plus = 0.0;
  double a_minus = 0.0;
};

ReducedParams reduce(const AtomParams& params, const RelaxationModel& relax);

// Projections of the b/b' and c' populations onto the RF-dressed states
// |B> = cos(theta)|b> + sin(theta)|b'>, |B'> = -sin(theta)|b> + cos(theta)|b'>.
struct DressedPopulations {
  double theta_b = 0.0;  // tan(2 theta_b) = Omega_b / Delta_b, theta_b in [0, pi/2]
  complex p_b_plus;
  complex p_b_minus;
  double p_c_plus = 0.0;
  double p_c_minus = 0.0;
  double rho_bb = 0.0;
  complex rho_bbp;
  double rho_cpcp = 0.0;
};

// r_c' Om^2 / (2 g_c'a Oc^2 + g_c'c' Om^2)
double population_cpcp(const AtomParams& params, const RelaxationModel& relax);
double population_bb(const AtomParams& params, const RelaxationModel& relax);
complex coherence_bbp(const AtomParams& params, const RelaxationModel& relax);

// theta_b = atan2(Omega_b, Delta_b) / 2: pi/4 on resonance, -> 0 for
// Delta_b -> +inf. Throws DegenerateDressing when Omega_b = Delta_b = 0.
DressedPopulations dressed_projections(const AtomParams& params, const RelaxationModel& relax);

// Throws DomainError unless Delta_mu = Delta_c = 0.
complex chi_analytic(const AtomParams& params, const RelaxationModel& relax);

// Right-hand side of the gain condition r_c'/r_b > threshold:
//   (2 g_c'a Oc^2 + g_C' Om^2) / ((g_bb + g_b'b') Om^2)
double gain_threshold(const AtomParams& params, const RelaxationModel& relax);

// Gamma = gamma_ab (Oc/Om)^2 + gamma_C'
double gain_linewidth(const AtomParams& params, const RelaxationModel& relax);

}  // namespace digs::analytic

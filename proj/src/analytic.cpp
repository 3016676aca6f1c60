#include "digs/analytic.hpp"

#include <cmath>

#include <fmt/format.h>

#include "digs/errors.hpp"

namespace digs::analytic {

namespace {

// Common denominator of rho_bb and rho_bb'.
double bb_denominator(const AtomParams& p, const RelaxationModel& r) {
  const double g_bb = r.gamma(Level::b, Level::b);
  const double g_pp = r.gamma(Level::bp, Level::bp);
  const double g_bp = r.gamma(Level::b, Level::bp);
  const double den = 2.0 * g_bb * g_pp * (g_bp * g_bp + p.delta_b * p.delta_b) +
                     (g_bb + g_pp) * g_bp * p.omega_b * p.omega_b;
  if (!(den > 0.0)) {
    throw DegenerateRelaxation("rho_bb denominator vanishes: check gamma_bb, gamma_b'b', gamma_bb'");
  }
  return den;
}

// X+- of the closed form for one dressed line.
complex dressed_line(const ReducedParams& r, complex p_b, double p_c, double a_pm) {
  const complex i{0.0, 1.0};
  const complex s1 = i * r.eps1 + a_pm;
  const complex s2 = i * r.eps2 + a_pm;
  const double c2 = r.c * r.c;
  const complex numerator = p_b * s1 * s2 - c2 * (p_b - p_c);
  const complex denominator = s2 - (i * r.eta + a_pm) * (s1 * s2 - c2);
  return -r.eta * numerator / denominator;
}

}  // namespace

ReducedParams reduce(const AtomParams& p, const RelaxationModel& relax) {
  ReducedParams r;
  r.eta = 2.0 * relax.gamma(Level::a, Level::b) / p.omega_mu;
  r.c = p.omega_c / p.omega_mu;
  r.b = std::hypot(p.omega_b, p.delta_b) / p.omega_mu;
  r.eps1 = 2.0 * relax.gamma_C() / p.omega_mu;
  r.eps2 = 2.0 * relax.gamma_Cp() / p.omega_mu;
  r.a = (p.delta_p - p.delta_b / 2.0) / p.omega_mu;
  r.a_plus = -2.0 * r.a - r.b;
  r.a_minus = -2.0 * r.a + r.b;
  return r;
}

double population_cpcp(const AtomParams& p, const RelaxationModel& relax) {
  const double om2 = p.omega_mu * p.omega_mu;
  const double den = 2.0 * relax.gamma(Level::cp, Level::a) * p.omega_c * p.omega_c +
                     relax.gamma(Level::cp, Level::cp) * om2;
  if (!(den > 0.0)) throw DegenerateRelaxation("rho_c'c' denominator vanishes");
  return relax.r_cp() * om2 / den;
}

double population_bb(const AtomParams& p, const RelaxationModel& relax) {
  const double g_pp = relax.gamma(Level::bp, Level::bp);
  const double g_bp = relax.gamma(Level::b, Level::bp);
  const double num = 2.0 * g_pp * (g_bp * g_bp + p.delta_b * p.delta_b) + g_bp * p.omega_b * p.omega_b;
  return relax.r_b() * num / bb_denominator(p, relax);
}

complex coherence_bbp(const AtomParams& p, const RelaxationModel& relax) {
  const double g_pp = relax.gamma(Level::bp, Level::bp);
  const double g_bp = relax.gamma(Level::b, Level::bp);
  const complex num = relax.r_b() * g_pp * complex(p.delta_b, -g_bp) * p.omega_b;
  return num / bb_denominator(p, relax);
}

DressedPopulations dressed_projections(const AtomParams& p, const RelaxationModel& relax) {
  if (p.omega_b == 0.0 && p.delta_b == 0.0) {
    throw DegenerateDressing("dressing angle undefined for omega_b = delta_b = 0");
  }
  DressedPopulations d;
  d.theta_b = 0.5 * std::atan2(p.omega_b, p.delta_b);
  d.rho_bb = population_bb(p, relax);
  d.rho_bbp = coherence_bbp(p, relax);
  d.rho_cpcp = population_cpcp(p, relax);

  const double cs = std::cos(d.theta_b);
  const double sn = std::sin(d.theta_b);
  d.p_c_plus = -cs * cs * d.rho_cpcp;
  d.p_c_minus = sn * sn * d.rho_cpcp;
  d.p_b_plus = -cs * cs * d.rho_bb - sn * cs * d.rho_bbp;
  d.p_b_minus = sn * sn * d.rho_bb - sn * cs * d.rho_bbp;
  return d;
}

complex chi_analytic(const AtomParams& p, const RelaxationModel& relax) {
  if (p.delta_mu != 0.0 || p.delta_c != 0.0) {
    throw DomainError(fmt::format(
        "closed-form susceptibility holds only for delta_mu = delta_c = 0 (got {}, {}); "
        "use the numeric backend",
        p.delta_mu, p.delta_c));
  }
  const ReducedParams r = reduce(p, relax);
  const DressedPopulations d = dressed_projections(p, relax);
  return dressed_line(r, d.p_b_plus, d.p_c_plus, r.a_plus) -
         dressed_line(r, d.p_b_minus, d.p_c_minus, r.a_minus);
}

double gain_threshold(const AtomParams& p, const RelaxationModel& relax) {
  const double om2 = p.omega_mu * p.omega_mu;
  const double den =
      (relax.gamma(Level::b, Level::b) + relax.gamma(Level::bp, Level::bp)) * om2;
  if (!(den > 0.0)) throw DegenerateRelaxation("gain threshold denominator vanishes");
  return (2.0 * relax.gamma(Level::cp, Level::a) * p.omega_c * p.omega_c +
          relax.gamma_Cp() * om2) /
         den;
}

double gain_linewidth(const AtomParams& p, const RelaxationModel& relax) {
  const double ratio = p.omega_c / p.omega_mu;
  return relax.gamma(Level::a, Level::b) * ratio * ratio + relax.gamma_Cp();
}

}  // namespace digs::analytic

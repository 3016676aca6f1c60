#include "digs/doppler.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "digs/analytic.hpp"
#include "digs/errors.hpp"
#include "digs/liouvillian.hpp"

namespace digs::doppler {

namespace {

constexpr double kHalfWidth = 8.0;  // truncation of the normal density, in sigma

double normal_weight(double x) { return std::exp(-0.5 * x * x); }

void normalize(QuadratureNodes& q) {
  double total = 0.0;
  for (double w : q.weights) total += w;
  for (double& w : q.weights) w /= total;
}

void check_order(int order) {
  if (order < 3 || order % 2 == 0) {
    throw DomainError(fmt::format("quadrature order must be odd and >= 3, got {}", order));
  }
}

AverageResult hermite_average(const std::function<complex(double)>& f, double sigma, int order) {
  const QuadratureNodes q = gauss_hermite(order);
  AverageResult out{complex{0.0, 0.0}, q.nodes.size(), 0};
  for (std::size_t i = 0; i < q.nodes.size(); ++i) out.value += q.weights[i] * f(sigma * q.nodes[i]);
  return out;
}

AverageResult adaptive_average(const std::function<complex(double)>& f, double sigma,
                               const DopplerSpec& spec, int max_refinements) {
  long half = (spec.quadrature_order - 1) / 2;
  double step = kHalfWidth / static_cast<double>(half);

  complex weighted{0.0, 0.0};
  double weight_sum = 0.0;
  std::size_t evaluations = 0;
  const auto add = [&](double x) {
    const double w = normal_weight(x);
    weighted += w * f(sigma * x);
    weight_sum += w;
    ++evaluations;
  };

  for (long i = -half; i <= half; ++i) add(step * static_cast<double>(i));
  complex previous = weighted / weight_sum;

  for (int level = 1; level <= max_refinements; ++level) {
    step /= 2.0;
    for (long i = -2 * half + 1; i < 2 * half; i += 2) add(step * static_cast<double>(i));
    half *= 2;
    const complex current = weighted / weight_sum;
    if (level >= 2 && std::abs(current - previous) <= spec.tolerance * std::abs(current) + 1e-300) {
      return {current, evaluations, level};
    }
    previous = current;
  }
  throw QuadratureError(fmt::format(
      "Doppler average with sigma = {} not converged to {} after {} refinements ({} nodes)", sigma,
      spec.tolerance, max_refinements, evaluations));
}

}  // namespace

QuadratureNodes gauss_hermite(int order) {
  check_order(order);
  // Jacobi matrix of the probabilists' Hermite recurrence.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jacobi(k, k - 1) = std::sqrt(static_cast<double>(k));
    jacobi(k - 1, k) = jacobi(k, k - 1);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jacobi);
  QuadratureNodes q;
  q.nodes.resize(order);
  q.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    q.nodes[i] = eig.eigenvalues()(i);
    q.weights[i] = eig.eigenvectors()(0, i) * eig.eigenvectors()(0, i);
  }
  // Symmetric rule: pin the center node to zero exactly.
  q.nodes[order / 2] = 0.0;
  normalize(q);
  return q;
}

QuadratureNodes normal_trapezoid(int order, int refinements) {
  check_order(order);
  const long half = static_cast<long>((order - 1) / 2) << refinements;
  const double step = kHalfWidth / static_cast<double>(half);
  QuadratureNodes q;
  for (long i = -half; i <= half; ++i) {
    const double x = step * static_cast<double>(i);
    q.nodes.push_back(x);
    q.weights.push_back(normal_weight(x));
  }
  normalize(q);
  return q;
}

AverageResult gaussian_average(const std::function<complex(double)>& f, double sigma,
                               const DopplerSpec& spec, int max_refinements) {
  if (sigma < 0.0) throw DomainError("Gaussian width must be >= 0");
  if (sigma == 0.0) return {f(0.0), 1, 0};
  check_order(spec.quadrature_order);
  if (spec.rule == DopplerRule::hermite) return hermite_average(f, sigma, spec.quadrature_order);
  return adaptive_average(f, sigma, spec, max_refinements);
}

AtomParams shift_two_photon(const AtomParams& params, double shift) {
  AtomParams out = params;
  out.delta_mu -= shift;
  return out;
}

AtomParams shift_probe(const AtomParams& params, double shift) {
  AtomParams out = params;
  out.delta_p += shift;
  out.delta_mu += shift;
  return out;
}

complex average_chi(const AtomParams& params, const RelaxationModel& relax, const DopplerSpec& spec,
                    Backend backend) {
  const auto evaluate = [&](const AtomParams& p) {
    return backend == Backend::analytic ? analytic::chi_analytic(p, relax)
                                        : susceptibility_numeric(p, relax);
  };
  if (!spec.enabled()) return evaluate(params);
  if (backend != Backend::numeric) {
    throw DomainError("Doppler averaging shifts delta_mu, which needs the numeric backend");
  }

  const auto probe_averaged = [&](const AtomParams& p) {
    return gaussian_average([&](double t) { return evaluate(shift_probe(p, t)); },
                            spec.sigma_probe, spec)
        .value;
  };
  return gaussian_average([&](double s) { return probe_averaged(shift_two_photon(params, s)); },
                          spec.sigma_delta, spec)
      .value;
}

}  // namespace digs::doppler

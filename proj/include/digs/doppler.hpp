#pragma once

// Gaussian inhomogeneous averaging of chi_reduced over the two-photon detuning
// and/or the probe detuning.

#include <cstddef>
#include <functional>
#include <vector>

#include "digs/model.hpp"

namespace digs::doppler {

// Nodes and weights for averages over a standard normal variable. Weights
// sum to one.
struct QuadratureNodes {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Probabilists' Gauss-Hermite rule (Golub-Welsch). `order` odd keeps x = 0.
QuadratureNodes gauss_hermite(int order);

// Trapezoid nodes on [-8, 8]: `order` points, then `refinements` halvings of
// the step. The adaptive rule visits exactly these nodes.
QuadratureNodes normal_trapezoid(int order, int refinements);

struct AverageResult {
  complex value;
  std::size_t evaluations = 0;
  int refinements = 0;
};

// E[f(sigma X)] for X ~ N(0, 1) with the rule selected in `spec`. The
// adaptive rule halves its step until successive estimates differ by less
// than spec.tolerance (relative), and throws QuadratureError if that needs
// more than `max_refinements` halvings.
AverageResult gaussian_average(const std::function<complex(double)>& f, double sigma,
                               const DopplerSpec& spec, int max_refinements = 12);

// Moves |c> and |c'> by `shift`: delta -> delta + shift at fixed delta_p.
AtomParams shift_two_photon(const AtomParams& params, double shift);
// Moves |a> by `shift`: delta_p and delta_mu co-shift, delta fixed.
AtomParams shift_probe(const AtomParams& params, double shift);

// Doppler-averaged chi_reduced at params.delta_p. With spec disabled this is
// the plain backend value. Any nonzero width needs Backend::numeric.
complex average_chi(const AtomParams& params, const RelaxationModel& relax, const DopplerSpec& spec,
                    Backend backend = Backend::numeric);

}  // namespace digs::doppler

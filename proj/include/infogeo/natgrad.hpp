#pragma once

// Natural-gradient descent demo on the simplex: minimizes the squared
// Euclidean distance to a target point using the Fisher-metric gradient
// obtained from the Gram system.

#include <vector>

#include "infogeo/simplex.hpp"

namespace infogeo {

/// f(p) = sum_i (p_i - target_i)^2.
double natgrad_loss(const Distribution& p, const Vec& target);

/// The gradient of f with respect to the Fisher metric, computed by solving
/// the Gram system over the basis {center(p, e_i)}_{i<n}. Equal to
/// center(p, 8 (p - target)) up to rounding.
TangentVector natural_gradient(const Distribution& p, const Vec& target);

struct NatGradOptions {
  int iters = 500;
  double step = 0.25;
  double f_stop = 1e-16;  // early stop threshold on the loss
};

struct NatGradTracePoint {
  int iter;
  double f;
  Distribution p;
};

/// Runs descent updates p_i <- p_i (1 - step * g_i), which follow the
/// tangent direction -g in the curve representation dp_i = p_i u_i. The sum
/// of weights is preserved by construction; a weight driven to zero or below
/// raises LeftSimplex with the offending iteration number.
std::vector<NatGradTracePoint> natural_gradient_descent(
    const Distribution& start, const Vec& target, const NatGradOptions& opts);

}  // namespace infogeo

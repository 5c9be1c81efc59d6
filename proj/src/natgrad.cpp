#include "infogeo/natgrad.hpp"

#include <cmath>
#include <sstream>

namespace infogeo {

double natgrad_loss(const Distribution& p, const Vec& target) {
  if (target.size() != p.weights().size()) {
    throw DimensionMismatch("natgrad_loss: target has wrong length");
  }
  double f = 0.0;
  for (size_t i = 0; i < target.size(); ++i) {
    double d = p.weights()[i] - target[i];
    f += d * d;
  }
  return f;
}

TangentVector natural_gradient(const Distribution& p, const Vec& target) {
  if (target.size() != p.weights().size()) {
    throw DimensionMismatch("natural_gradient: target has wrong length");
  }
  const int n = p.size();
  std::vector<TangentVector> basis;
  basis.reserve(static_cast<size_t>(n - 1));
  for (int i = 0; i < n - 1; ++i) {
    Vec e(static_cast<size_t>(n), 0.0);
    e[static_cast<size_t>(i)] = 1.0;
    basis.push_back(center(p, e));
  }
  Eigen::MatrixXd gram = fisher_gram(p, basis);
  // Directional derivative of f along a basis vector b: sum_k f'_k p_k b_k,
  // since curves move as dp_k = p_k b_k.
  Eigen::VectorXd rhs(n - 1);
  for (int i = 0; i < n - 1; ++i) {
    double d = 0.0;
    for (int k = 0; k < n; ++k) {
      double fk = 2.0 * (p[k] - target[static_cast<size_t>(k)]);
      d += fk * p[k] * basis[static_cast<size_t>(i)].components()[static_cast<size_t>(k)];
    }
    rhs(i) = d;
  }
  Eigen::VectorXd coef = gram.ldlt().solve(rhs);
  Vec g(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n - 1; ++i) {
    for (int k = 0; k < n; ++k) {
      g[static_cast<size_t>(k)] +=
          coef(i) * basis[static_cast<size_t>(i)].components()[static_cast<size_t>(k)];
    }
  }
  return center(p, g);
}

std::vector<NatGradTracePoint> natural_gradient_descent(
    const Distribution& start, const Vec& target, const NatGradOptions& opts) {
  if (opts.step <= 0.0) throw InvalidArgument("natgrad: step must be positive");
  if (opts.iters < 1) throw InvalidArgument("natgrad: iters must be >= 1");
  // The target must itself be an interior point.
  make_distribution(target);

  std::vector<NatGradTracePoint> trace;
  Distribution p = start;
  trace.push_back({0, natgrad_loss(p, target), p});
  for (int it = 1; it <= opts.iters; ++it) {
    if (trace.back().f <= opts.f_stop) break;
    TangentVector g = natural_gradient(p, target);
    Vec next(p.weights());
    for (size_t i = 0; i < next.size(); ++i) {
      next[i] *= 1.0 - opts.step * g.components()[i];
      if (!(next[i] > 1e-12)) {
        std::ostringstream os;
        os << "natural-gradient update left the open simplex at iteration "
           << it << " (weight[" << i << "] = " << next[i] << ")";
        throw LeftSimplex(os.str(), static_cast<double>(it));
      }
    }
    // The update preserves the unit sum analytically; renormalize away the
    // accumulated rounding so the constructor invariant holds.
    double s = 0.0;
    for (double w : next) s += w;
    for (double& w : next) w /= s;
    p = Distribution(std::move(next));
    trace.push_back({it, natgrad_loss(p, target), p});
  }
  return trace;
}

}  // namespace infogeo

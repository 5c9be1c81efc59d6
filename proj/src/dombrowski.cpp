#include "infogeo/dombrowski.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace infogeo {

namespace {

bool same_components(const Vec& a, const Vec& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

void require_compatible(const SplitDoubleTangent& x,
                        const SplitDoubleTangent& y) {
  if (!same_distribution(x.base(), y.base())) {
    throw BaseMismatch("split double tangents live at different base points");
  }
  if (!same_components(x.foot().components(), y.foot().components(),
                       kBaseMatchTol)) {
    throw FootMismatch("split double tangents live in different fibers");
  }
}

}  // namespace

SplitDoubleTangent::SplitDoubleTangent(TangentVector foot,
                                       TangentVector horizontal,
                                       TangentVector vertical)
    : foot_(std::move(foot)),
      horizontal_(std::move(horizontal)),
      vertical_(std::move(vertical)) {
  if (!same_distribution(foot_.base(), horizontal_.base()) ||
      !same_distribution(foot_.base(), vertical_.base())) {
    throw BaseMismatch("split components must share one base distribution");
  }
}

double split_metric_G(const SplitDoubleTangent& x, const SplitDoubleTangent& y) {
  require_compatible(x, y);
  return fisher_metric(x.horizontal(), y.horizontal()) +
         fisher_metric(x.vertical(), y.vertical());
}

double split_form_Omega(const SplitDoubleTangent& x,
                        const SplitDoubleTangent& y) {
  require_compatible(x, y);
  return fisher_metric(x.horizontal(), y.vertical()) -
         fisher_metric(x.vertical(), y.horizontal());
}

SplitDoubleTangent split_J(const SplitDoubleTangent& x) {
  // Componentwise negation is exact and preserves the zero-expectation
  // invariant, so J(J(x)) = -x holds bitwise.
  Vec negated(x.vertical().components());
  for (double& v : negated) v = -v;
  return SplitDoubleTangent(x.foot(),
                            TangentVector(x.base(), std::move(negated)),
                            x.horizontal());
}

VectorFieldAlongCurve phi_inverse_curve(const SplitDoubleTangent& x,
                                        RepresentativeCurve kind) {
  Curve base = kind == RepresentativeCurve::kExponentialGeodesic
                   ? Curve::exponential_family(x.base(),
                                               x.horizontal().components())
                   : Curve::mixture_line(x.horizontal());
  Vec u = x.foot().components();
  Vec w = x.vertical().components();
  auto raw = [u, w](double t) {
    Vec out(u.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = u[i] + t * w[i];
    return out;
  };
  return VectorFieldAlongCurve(std::move(base), std::move(raw));
}

TangentVector connector(const VectorFieldAlongCurve& gamma, double t, double h) {
  return exponential_derivative(gamma, t, h);
}

TangentBundleChart::TangentBundleChart(int n) : n_(n) {
  if (n_ < 2) throw DimensionMismatch("TangentBundleChart needs n >= 2");
}

Eigen::VectorXd TangentBundleChart::to_coords(const TangentVector& point) const {
  if (point.size() != n_) {
    throw DimensionMismatch("to_coords: point has wrong dimension");
  }
  Eigen::VectorXd x(dim());
  for (int i = 0; i < n_ - 1; ++i) {
    x(i) = point.base()[i];
    x(n_ - 1 + i) = point.components()[static_cast<size_t>(i)];
  }
  return x;
}

TangentVector TangentBundleChart::to_point(const Eigen::VectorXd& coords) const {
  if (coords.size() != dim()) {
    throw DimensionMismatch("to_point: coordinate vector has wrong dimension");
  }
  Vec p(static_cast<size_t>(n_));
  double sum = 0.0;
  for (int i = 0; i < n_ - 1; ++i) {
    p[static_cast<size_t>(i)] = coords(i);
    sum += coords(i);
  }
  double p_last = 1.0 - sum;
  if (!(p_last > 0.0)) {
    throw LeftSimplex("chart coordinates leave the open simplex", 0.0);
  }
  p[static_cast<size_t>(n_ - 1)] = p_last;
  Vec u(static_cast<size_t>(n_));
  double acc = 0.0;
  for (int i = 0; i < n_ - 1; ++i) {
    u[static_cast<size_t>(i)] = coords(n_ - 1 + i);
    acc += p[static_cast<size_t>(i)] * coords(n_ - 1 + i);
  }
  u[static_cast<size_t>(n_ - 1)] = -acc / p_last;
  Distribution base(std::move(p));
  return TangentVector(std::move(base), std::move(u));
}

SplitDoubleTangent TangentBundleChart::constant_field_at(
    const Eigen::VectorXd& coords, const Eigen::VectorXd& delta) const {
  if (delta.size() != dim()) {
    throw DimensionMismatch("constant_field_at: field has wrong dimension");
  }
  TangentVector foot = to_point(coords);
  const Vec& p = foot.base().weights();
  const Vec& u = foot.components();
  size_t last = static_cast<size_t>(n_ - 1);

  // Base motion: dp with the last entry forced by the unit-sum constraint;
  // in the exponential representation v_i = dp_i / p_i.
  Vec v(p.size());
  double dp_sum = 0.0;
  for (int i = 0; i < n_ - 1; ++i) dp_sum += delta(i);
  for (int i = 0; i < n_ - 1; ++i) {
    v[static_cast<size_t>(i)] = delta(i) / p[static_cast<size_t>(i)];
  }
  v[last] = -dp_sum / p[last];

  // Fiber motion: du_i is free for i < n; du_n follows from differentiating
  // u_n = -sum_{i<n} p_i u_i / p_n along the chart line.
  double a = 0.0;       // sum_{i<n} p_i u_i
  double a_dot = 0.0;   // d/dt of the same
  for (int i = 0; i < n_ - 1; ++i) {
    size_t k = static_cast<size_t>(i);
    a += p[k] * u[k];
    a_dot += delta(i) * u[k] + p[k] * delta(n_ - 1 + i);
  }
  Vec udot(p.size());
  for (int i = 0; i < n_ - 1; ++i) {
    udot[static_cast<size_t>(i)] = delta(n_ - 1 + i);
  }
  udot[last] = -a_dot / p[last] - a * dp_sum / (p[last] * p[last]);

  TangentVector horizontal = center(foot.base(), v);
  TangentVector vertical = center(foot.base(), udot);
  return SplitDoubleTangent(std::move(foot), std::move(horizontal),
                            std::move(vertical));
}

double omega_closedness_residual(const TangentBundleChart& chart,
                                 const Eigen::VectorXd& coords,
                                 const Eigen::VectorXd& field_x,
                                 const Eigen::VectorXd& field_y,
                                 const Eigen::VectorXd& field_z, double step) {
  auto omega_at = [&chart](const Eigen::VectorXd& at, const Eigen::VectorXd& a,
                           const Eigen::VectorXd& b) {
    return split_form_Omega(chart.constant_field_at(at, a),
                            chart.constant_field_at(at, b));
  };
  auto directional = [&](const Eigen::VectorXd& along, const Eigen::VectorXd& a,
                         const Eigen::VectorXd& b) {
    return (omega_at(coords + step * along, a, b) -
            omega_at(coords - step * along, a, b)) /
           (2.0 * step);
  };
  return std::abs(directional(field_x, field_y, field_z) -
                  directional(field_y, field_x, field_z) +
                  directional(field_z, field_x, field_y));
}

}  // namespace infogeo

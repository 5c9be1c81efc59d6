#include "infogeo/connections.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "infogeo/rng.hpp"

namespace infogeo {

namespace {

void require_fd_step(double h) {
  if (!(h >= 1e-8 && h <= 1e-2)) {
    std::ostringstream os;
    os << "finite-difference step " << h << " outside [1e-8, 1e-2]";
    throw InvalidArgument(os.str());
  }
}

double dot_weighted(const Vec& p, const Vec& a, const Vec& b) {
  double s = 0.0;
  for (size_t i = 0; i < p.size(); ++i) s += p[i] * a[i] * b[i];
  return s;
}

}  // namespace

Alpha::Alpha(double value) : value_(value) {
  if (!std::isfinite(value_)) throw InvalidArgument("alpha must be finite");
}

VectorFieldAlongCurve::VectorFieldAlongCurve(Curve curve, RawField field)
    : curve_(std::move(curve)), field_(std::move(field)) {}

VectorFieldAlongCurve::VectorFieldAlongCurve(Curve curve, RawField field,
                                             RawField centered_derivative)
    : curve_(std::move(curve)),
      field_(std::move(field)),
      centered_derivative_(std::move(centered_derivative)) {}

TangentVector VectorFieldAlongCurve::at(double t) const {
  return center(curve_.at(t), field_(t));
}

Vec VectorFieldAlongCurve::centered_components(double t) const {
  return at(t).components();
}

Vec VectorFieldAlongCurve::centered_derivative(double t, double h,
                                               bool richardson) const {
  if (centered_derivative_) return (*centered_derivative_)(t);
  auto diff = [this, t](double step) {
    Vec plus = centered_components(t + step);
    Vec minus = centered_components(t - step);
    for (size_t i = 0; i < plus.size(); ++i) {
      plus[i] = (plus[i] - minus[i]) / (2.0 * step);
    }
    return plus;
  };
  Vec d = diff(h);
  if (richardson) {
    Vec d2 = diff(h / 2.0);
    for (size_t i = 0; i < d.size(); ++i) d[i] = (4.0 * d2[i] - d[i]) / 3.0;
  }
  return d;
}

VectorFieldAlongCurve VectorFieldAlongCurve::constant_raw(Curve curve, Vec raw) {
  return VectorFieldAlongCurve(std::move(curve),
                               [raw](double) { return raw; });
}

VectorFieldAlongCurve VectorFieldAlongCurve::velocity_field(Curve curve) {
  if (!curve.has_analytic_velocity()) {
    throw InvalidArgument(
        "velocity_field requires a curve with analytic velocity");
  }
  Curve copy = curve;
  return VectorFieldAlongCurve(
      curve, [copy](double t) { return copy.velocity(t).components(); });
}

TangentVector covariant_derivative(Alpha alpha, const VectorFieldAlongCurve& vf,
                                   double t, double h) {
  require_fd_step(h);
  Distribution p = vf.curve().at(t);
  Vec vdot = vf.centered_derivative(t, h);
  double c = (1.0 - alpha.value()) / 2.0;
  if (c != 0.0) {
    Vec u = vf.curve().velocity(t, h).components();
    Vec v = vf.centered_components(t);
    for (size_t i = 0; i < vdot.size(); ++i) vdot[i] += c * u[i] * v[i];
  }
  return center(p, vdot);
}

TangentVector exponential_derivative(const VectorFieldAlongCurve& vf, double t,
                                     double h) {
  require_fd_step(h);
  return center(vf.curve().at(t), vf.centered_derivative(t, h));
}

namespace {

// Right-hand side of the geodesic system in (p, u) coordinates.
void geodesic_rhs(double alpha, const Vec& p, const Vec& u, Vec& dp, Vec& du) {
  double e_u2 = dot_weighted(p, u, u);
  double drift = -(1.0 + alpha) / 2.0 * e_u2;
  double c = -(1.0 - alpha) / 2.0;
  for (size_t i = 0; i < p.size(); ++i) {
    dp[i] = p[i] * u[i];
    du[i] = c * u[i] * u[i] + drift;
  }
}

struct GeodesicStepper {
  double alpha;
  Vec p, u;
  Vec k1p, k1u, k2p, k2u, k3p, k3u, k4p, k4u, tp, tu;

  GeodesicStepper(double a, Vec p0, Vec u0)
      : alpha(a), p(std::move(p0)), u(std::move(u0)) {
    size_t n = p.size();
    for (Vec* v : {&k1p, &k1u, &k2p, &k2u, &k3p, &k3u, &k4p, &k4u, &tp, &tu}) {
      v->assign(n, 0.0);
    }
  }

  void step(double h, double t_next) {
    size_t n = p.size();
    geodesic_rhs(alpha, p, u, k1p, k1u);
    for (size_t i = 0; i < n; ++i) {
      tp[i] = p[i] + 0.5 * h * k1p[i];
      tu[i] = u[i] + 0.5 * h * k1u[i];
    }
    geodesic_rhs(alpha, tp, tu, k2p, k2u);
    for (size_t i = 0; i < n; ++i) {
      tp[i] = p[i] + 0.5 * h * k2p[i];
      tu[i] = u[i] + 0.5 * h * k2u[i];
    }
    geodesic_rhs(alpha, tp, tu, k3p, k3u);
    for (size_t i = 0; i < n; ++i) {
      tp[i] = p[i] + h * k3p[i];
      tu[i] = u[i] + h * k3u[i];
    }
    geodesic_rhs(alpha, tp, tu, k4p, k4u);
    for (size_t i = 0; i < n; ++i) {
      p[i] += h / 6.0 * (k1p[i] + 2.0 * k2p[i] + 2.0 * k3p[i] + k4p[i]);
      u[i] += h / 6.0 * (k1u[i] + 2.0 * k2u[i] + 2.0 * k3u[i] + k4u[i]);
    }
    for (size_t i = 0; i < n; ++i) {
      if (!(p[i] >= kSimplexFloor && p[i] <= 1.0)) {
        std::ostringstream os;
        os << "geodesic left the open simplex near t = " << t_next
           << " (weight[" << i << "] = " << p[i] << ")";
        throw LeftSimplex(os.str(), t_next);
      }
    }
    // Project back onto the constraint set: unit sum, zero expectation.
    double s = 0.0;
    for (double w : p) s += w;
    for (double& w : p) w /= s;
    double e = 0.0;
    for (size_t i = 0; i < n; ++i) e += p[i] * u[i];
    for (double& v : u) v -= e;
  }
};

void require_geodesic_args(const Distribution& p0, const TangentVector& v0,
                           int steps) {
  if (!same_distribution(v0.base(), p0)) {
    throw BaseMismatch("geodesic: initial velocity not based at p0");
  }
  if (steps < 16) {
    throw InvalidArgument("geodesic: steps must be at least 16, got " +
                          std::to_string(steps));
  }
}

}  // namespace

std::vector<GeodesicState> integrate_geodesic(Alpha alpha,
                                              const Distribution& p0,
                                              const TangentVector& v0,
                                              double t_end, int steps) {
  require_geodesic_args(p0, v0, steps);
  if (!(t_end > 0.0)) throw InvalidArgument("geodesic: t_end must be positive");
  GeodesicStepper st(alpha.value(), p0.weights(), v0.components());
  double h = t_end / steps;
  std::vector<GeodesicState> out;
  out.reserve(static_cast<size_t>(steps) + 1);
  out.push_back({0.0, p0, v0});
  for (int k = 1; k <= steps; ++k) {
    double t = h * k;
    st.step(h, t);
    Distribution p(st.p);
    out.push_back({t, p, TangentVector(p, st.u)});
  }
  return out;
}

Curve geodesic(Alpha alpha, const Distribution& p0, const TangentVector& v0,
               double t_end, int steps) {
  require_geodesic_args(p0, v0, steps);
  if (!(t_end > 0.0)) throw InvalidArgument("geodesic: t_end must be positive");
  double a = alpha.value();
  Vec p0w = p0.weights();
  Vec v0c = v0.components();
  double base_step = t_end / steps;
  auto state_at = [a, p0w, v0c, base_step](double t) {
    GeodesicStepper st(a, p0w, v0c);
    if (t != 0.0) {
      int m = std::max(1, static_cast<int>(std::ceil(std::abs(t) / base_step)));
      double h = t / m;
      for (int k = 1; k <= m; ++k) st.step(h, h * k);
    }
    return std::make_pair(st.p, st.u);
  };
  Curve::Map map = [state_at](double t) {
    return make_distribution(state_at(t).first);
  };
  Curve::VelocityMap vel = [state_at](double t) {
    auto [p, u] = state_at(t);
    Distribution d(std::move(p));
    return TangentVector(d, std::move(u));
  };
  return Curve(std::move(map), std::move(vel), -t_end, t_end);
}

TangentVector parallel_transport(Alpha alpha, const Curve& curve,
                                 const TangentVector& v0, double t_end,
                                 int steps) {
  if (!same_distribution(v0.base(), curve.at(0.0))) {
    throw BaseMismatch("parallel_transport: v0 not based at curve(0)");
  }
  if (steps < 16) {
    throw InvalidArgument("parallel_transport: steps must be at least 16");
  }
  if (t_end < curve.t_min() || t_end > curve.t_max()) {
    throw CurveDomain("parallel_transport: t_end outside the curve's interval");
  }
  double a = alpha.value();
  double c = -(1.0 - a) / 2.0;
  double d = -(1.0 + a) / 2.0;
  size_t n = v0.components().size();
  Vec v = v0.components();
  // Stage data: p(t) and u(t) from the curve.
  auto rhs = [&](double t, const Vec& vv, Vec& out) {
    Distribution pt = curve.at(t);
    Vec u = curve.velocity(t).components();
    double e_uv = dot_weighted(pt.weights(), u, vv);
    for (size_t i = 0; i < n; ++i) out[i] = c * u[i] * vv[i] + d * e_uv;
  };
  double h = t_end / steps;
  Vec k1(n), k2(n), k3(n), k4(n), tmp(n);
  for (int k = 0; k < steps; ++k) {
    double t = h * k;
    rhs(t, v, k1);
    for (size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * h * k1[i];
    rhs(t + 0.5 * h, tmp, k2);
    for (size_t i = 0; i < n; ++i) tmp[i] = v[i] + 0.5 * h * k2[i];
    rhs(t + 0.5 * h, tmp, k3);
    for (size_t i = 0; i < n; ++i) tmp[i] = v[i] + h * k3[i];
    rhs(t + h, tmp, k4);
    for (size_t i = 0; i < n; ++i) {
      v[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }
  return center(curve.at(t_end), v);
}

double duality_residual(Alpha alpha, const Distribution& p, const Vec& x_raw,
                        const Vec& y_raw, const Vec& z_raw, double h) {
  require_fd_step(h);
  Curve curve = Curve::exponential_family(p, x_raw);
  VectorFieldAlongCurve y = VectorFieldAlongCurve::constant_raw(curve, y_raw);
  VectorFieldAlongCurve z = VectorFieldAlongCurve::constant_raw(curve, z_raw);
  double g_plus = fisher_metric(y.at(h), z.at(h));
  double g_minus = fisher_metric(y.at(-h), z.at(-h));
  double lhs = (g_plus - g_minus) / (2.0 * h);
  Alpha dual(-alpha.value());
  double rhs = fisher_metric(covariant_derivative(alpha, y, 0.0, h), z.at(0.0)) +
               fisher_metric(y.at(0.0), covariant_derivative(dual, z, 0.0, h));
  return std::abs(lhs - rhs);
}

double check_duality(Alpha alpha, const Distribution& p, std::uint64_t seed) {
  double worst = 0.0;
  size_t n = p.weights().size();
  for (int s = 0; s < 20; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    Vec x(n), y(n), z(n);
    for (double& v : x) v = rng.normal();
    for (double& v : y) v = rng.normal();
    for (double& v : z) v = rng.normal();
    worst = std::max(worst, duality_residual(alpha, p, x, y, z));
  }
  return worst;
}

}  // namespace infogeo

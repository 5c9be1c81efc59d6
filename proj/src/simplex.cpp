#include "infogeo/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "infogeo/rng.hpp"

namespace infogeo {

namespace {

double sum(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

void require_same_length(size_t a, size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": length " << a << " vs " << b;
    throw DimensionMismatch(os.str());
  }
}

}  // namespace

Distribution::Distribution(Vec weights) : weights_(std::move(weights)) {
  if (weights_.size() < 2) {
    throw DimensionMismatch("Distribution needs at least 2 outcomes, got " +
                            std::to_string(weights_.size()));
  }
  for (size_t i = 0; i < weights_.size(); ++i) {
    if (!(weights_[i] > 0.0)) {
      std::ostringstream os;
      os << "weight[" << i << "] = " << weights_[i] << " is not strictly positive";
      throw NonPositiveWeight(os.str());
    }
  }
  double s = sum(weights_);
  if (std::abs(s - 1.0) > kWeightSumTol) {
    std::ostringstream os;
    os << "weights sum to " << s << ", |sum - 1| exceeds " << kWeightSumTol;
    throw NotNormalized(os.str());
  }
}

Distribution make_distribution(Vec weights) {
  return Distribution(std::move(weights));
}

Distribution normalize(Vec weights) {
  if (weights.size() < 2) {
    throw DimensionMismatch("normalize needs at least 2 entries, got " +
                            std::to_string(weights.size()));
  }
  for (size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) {
      std::ostringstream os;
      os << "entry[" << i << "] = " << weights[i] << " is not strictly positive";
      throw NonPositiveWeight(os.str());
    }
  }
  double s = sum(weights);
  for (double& w : weights) w /= s;
  return Distribution(std::move(weights));
}

bool same_distribution(const Distribution& a, const Distribution& b, double tol) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

double expectation(const Distribution& p, const Vec& x) {
  require_same_length(p.weights().size(), x.size(), "expectation");
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += p.weights()[i] * x[i];
  return s;
}

TangentVector::TangentVector(Distribution base, Vec components)
    : base_(std::move(base)), components_(std::move(components)) {
  require_same_length(base_.weights().size(), components_.size(),
                      "TangentVector");
  double e = expectation(base_, components_);
  if (std::abs(e) > kCenteringTol) {
    std::ostringstream os;
    os << "tangent components have E_p = " << e << ", exceeds " << kCenteringTol;
    throw NotNormalized(os.str());
  }
}

TangentVector center(const Distribution& p, const Vec& raw) {
  require_same_length(p.weights().size(), raw.size(), "center");
  double e = expectation(p, raw);
  Vec out(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) out[i] = raw[i] - e;
  return TangentVector(p, std::move(out));
}

namespace {

const Distribution& require_same_base(const TangentVector& a,
                                      const TangentVector& b) {
  if (!same_distribution(a.base(), b.base())) {
    throw BaseMismatch("tangent vectors live at different base points");
  }
  return a.base();
}

}  // namespace

TangentVector operator+(const TangentVector& a, const TangentVector& b) {
  const Distribution& p = require_same_base(a, b);
  Vec out(a.components());
  for (size_t i = 0; i < out.size(); ++i) out[i] += b.components()[i];
  return center(p, out);
}

TangentVector operator-(const TangentVector& a, const TangentVector& b) {
  const Distribution& p = require_same_base(a, b);
  Vec out(a.components());
  for (size_t i = 0; i < out.size(); ++i) out[i] -= b.components()[i];
  return center(p, out);
}

TangentVector operator*(double s, const TangentVector& v) {
  Vec out(v.components());
  for (double& x : out) x *= s;
  return center(v.base(), out);
}

TangentVector operator-(const TangentVector& v) { return -1.0 * v; }

double fisher_metric(const TangentVector& u, const TangentVector& v) {
  require_same_length(u.components().size(), v.components().size(),
                      "fisher_metric");
  require_same_base(u, v);
  const Vec& p = u.base().weights();
  double s = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    s += p[k] * u.components()[k] * v.components()[k];
  }
  return 0.25 * s;
}

Eigen::MatrixXd fisher_gram(const Distribution& p,
                            const std::vector<TangentVector>& basis) {
  const int m = static_cast<int>(basis.size());
  Eigen::MatrixXd gram(m, m);
  if (m == 0) return gram;
  for (const TangentVector& b : basis) {
    if (!same_distribution(b.base(), p)) {
      throw BaseMismatch("fisher_gram: basis vector not based at p");
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      double g = fisher_metric(basis[static_cast<size_t>(i)],
                               basis[static_cast<size_t>(j)]);
      gram(i, j) = g;
      gram(j, i) = g;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  double lo = es.eigenvalues().minCoeff();
  double hi = es.eigenvalues().maxCoeff();
  if (!(lo > 0.0) || hi / lo > kGramMaxCondition) {
    std::ostringstream os;
    os << "fisher_gram: basis is numerically singular (eigenvalue range ["
       << lo << ", " << hi << "])";
    throw SingularBasis(os.str());
  }
  return gram;
}

Distribution random_point(int n, std::uint64_t seed) {
  if (n < 2) {
    throw DimensionMismatch("random_point needs n >= 2, got " +
                            std::to_string(n));
  }
  Rng rng(seed);
  Vec x(static_cast<size_t>(n));
  for (double& v : x) v = std::max(rng.uniform(), 1e-6);
  return normalize(std::move(x));
}

TangentVector random_tangent(const Distribution& p, std::uint64_t seed) {
  Rng rng(seed);
  Vec raw(p.weights().size());
  for (double& v : raw) v = rng.normal();
  return center(p, raw);
}

Curve::Curve(Map map, double t_min, double t_max)
    : map_(std::move(map)), t_min_(t_min), t_max_(t_max) {
  if (!(t_min_ <= t_max_)) throw InvalidArgument("Curve: empty interval");
}

Curve::Curve(Map map, VelocityMap velocity, double t_min, double t_max)
    : map_(std::move(map)),
      velocity_(std::move(velocity)),
      t_min_(t_min),
      t_max_(t_max) {
  if (!(t_min_ <= t_max_)) throw InvalidArgument("Curve: empty interval");
}

void Curve::require_inside(double t) const {
  if (t < t_min_ || t > t_max_) {
    std::ostringstream os;
    os << "curve evaluated at t = " << t << " outside [" << t_min_ << ", "
       << t_max_ << "]";
    throw CurveDomain(os.str());
  }
}

Distribution Curve::at(double t) const {
  require_inside(t);
  return map_(t);
}

TangentVector Curve::velocity(double t, double h) const {
  require_inside(t);
  if (velocity_) return (*velocity_)(t);
  return velocity_fd(t, h);
}

TangentVector Curve::velocity_fd(double t, double h, bool richardson) const {
  if (!(h > 0.0)) throw InvalidArgument("velocity_fd: step must be positive");
  require_inside(t - h);
  require_inside(t + h);
  auto log_diff = [this, t](double step) {
    Distribution plus = map_(t + step);
    Distribution minus = map_(t - step);
    Vec u(plus.weights().size());
    for (size_t i = 0; i < u.size(); ++i) {
      u[i] = (std::log(plus.weights()[i]) - std::log(minus.weights()[i])) /
             (2.0 * step);
    }
    return u;
  };
  Vec u = log_diff(h);
  if (richardson) {
    Vec u2 = log_diff(h / 2.0);
    for (size_t i = 0; i < u.size(); ++i) u[i] = (4.0 * u2[i] - u[i]) / 3.0;
  }
  return center(map_(t), u);
}

Curve Curve::constant(Distribution p) {
  Distribution copy = p;
  Map map = [copy](double) { return copy; };
  VelocityMap vel = [copy](double) {
    return TangentVector(copy, Vec(copy.weights().size(), 0.0));
  };
  return Curve(std::move(map), std::move(vel), -1e300, 1e300);
}

Curve Curve::exponential_family(Distribution p, Vec direction) {
  require_same_length(p.weights().size(), direction.size(),
                      "exponential_family");
  Vec log_p(p.weights().size());
  for (size_t i = 0; i < log_p.size(); ++i) log_p[i] = std::log(p.weights()[i]);
  Vec a = std::move(direction);
  Map map = [log_p, a](double t) {
    Vec w(log_p.size());
    double m = -1e300;
    for (size_t i = 0; i < w.size(); ++i) {
      w[i] = log_p[i] + t * a[i];
      m = std::max(m, w[i]);
    }
    for (double& x : w) x = std::exp(x - m);
    return normalize(std::move(w));
  };
  VelocityMap vel = [map, a](double t) { return center(map(t), a); };
  return Curve(map, vel, -1e6, 1e6);
}

Curve Curve::mixture_line(const TangentVector& v0) {
  const Vec& p = v0.base().weights();
  Vec c(p.size());
  for (size_t i = 0; i < p.size(); ++i) c[i] = p[i] * v0.components()[i];
  // Far from t = 0 the accumulated rounding in sum(p + t c) can breach the
  // unit-sum tolerance, so the nominal interval is kept moderate.
  double t_lo = -1e2;
  double t_hi = 1e2;
  for (size_t i = 0; i < p.size(); ++i) {
    if (c[i] < 0.0) t_hi = std::min(t_hi, p[i] / -c[i]);
    if (c[i] > 0.0) t_lo = std::max(t_lo, -p[i] / c[i]);
  }
  t_lo *= 0.99;
  t_hi *= 0.99;
  Vec p_copy = p;
  Map map = [p_copy, c](double t) {
    Vec w(p_copy.size());
    for (size_t i = 0; i < w.size(); ++i) w[i] = p_copy[i] + t * c[i];
    return make_distribution(std::move(w));
  };
  VelocityMap vel = [map, c](double t) {
    Distribution pt = map(t);
    Vec u(c.size());
    for (size_t i = 0; i < u.size(); ++i) u[i] = c[i] / pt.weights()[i];
    return center(pt, u);
  };
  return Curve(map, vel, t_lo, t_hi);
}

}  // namespace infogeo

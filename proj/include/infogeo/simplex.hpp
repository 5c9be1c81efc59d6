#pragma once

// Open probability simplex: strictly positive distributions on a finite
// outcome set, tangent vectors in the exponential representation, smooth
// curves, and the Fisher metric.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "infogeo/errors.hpp"

namespace infogeo {

using Vec = std::vector<double>;

/// Absolute tolerance for the unit-sum invariant of a distribution.
inline constexpr double kWeightSumTol = 1e-12;
/// Absolute tolerance for the zero-expectation invariant of a tangent vector.
inline constexpr double kCenteringTol = 1e-12;
/// Componentwise tolerance used to decide whether two base points coincide.
inline constexpr double kBaseMatchTol = 1e-12;
/// Default central-difference step.
inline constexpr double kDefaultFdStep = 1e-5;
/// Condition-number ceiling above which a Gram matrix counts as singular.
inline constexpr double kGramMaxCondition = 1e12;
/// Hard floor for weights during geodesic integration.
inline constexpr double kSimplexFloor = 1e-9;

/// A strictly positive probability vector of length n >= 2 summing to one.
///
/// Construction validates and never repairs: weights that are not strictly
/// positive raise NonPositiveWeight, weights whose sum deviates from one by
/// more than kWeightSumTol raise NotNormalized. Use normalize() when the
/// input is a positive vector of arbitrary scale. Immutable after
/// construction.
class Distribution {
 public:
  explicit Distribution(Vec weights);

  int size() const { return static_cast<int>(weights_.size()); }
  const Vec& weights() const { return weights_; }
  double operator[](int i) const { return weights_[static_cast<size_t>(i)]; }

 private:
  Vec weights_;
};

/// Validating constructor for a Distribution (no silent normalization).
Distribution make_distribution(Vec weights);

/// Divides a strictly positive vector by its sum and constructs the result.
Distribution normalize(Vec weights);

/// True when the two distributions agree componentwise within tol.
bool same_distribution(const Distribution& a, const Distribution& b,
                       double tol = kBaseMatchTol);

/// Expectation E_p(x) = sum_i p_i x_i.
double expectation(const Distribution& p, const Vec& x);

/// A tangent vector at p in the exponential representation: a component
/// vector u with E_p(u) = 0. The correspondence with curve velocities is
/// d/dt p_i = p_i u_i.
class TangentVector {
 public:
  TangentVector(Distribution base, Vec components);

  const Distribution& base() const { return base_; }
  const Vec& components() const { return components_; }
  int size() const { return static_cast<int>(components_.size()); }

 private:
  Distribution base_;
  Vec components_;
};

/// Projects a raw vector onto the tangent space at p by subtracting its
/// expectation: raw - E_p(raw) * (1,...,1). Idempotent.
TangentVector center(const Distribution& p, const Vec& raw);

TangentVector operator+(const TangentVector& a, const TangentVector& b);
TangentVector operator-(const TangentVector& a, const TangentVector& b);
TangentVector operator*(double s, const TangentVector& v);
TangentVector operator-(const TangentVector& v);

/// Fisher metric g_F(u, v) = (1/4) sum_k p_k u_k v_k. The normalization is
/// fixed; the projective pullback identities hold only with this factor.
/// Both arguments must share the base point within kBaseMatchTol.
double fisher_metric(const TangentVector& u, const TangentVector& v);

/// Gram matrix of the Fisher metric over a basis of tangent vectors at p.
/// Throws SingularBasis when the matrix is rank deficient or its condition
/// number exceeds kGramMaxCondition. An empty basis yields a 0x0 matrix.
Eigen::MatrixXd fisher_gram(const Distribution& p,
                            const std::vector<TangentVector>& basis);

/// Deterministic sample of an interior point: uniform variates on (0,1)
/// clamped below at 1e-6, then normalized. Every weight is therefore at
/// least 1e-6 / n.
Distribution random_point(int n, std::uint64_t seed);

/// Deterministic sample of a tangent vector at p: standard normal components
/// centered at p.
TangentVector random_tangent(const Distribution& p, std::uint64_t seed);

/// A smooth one-parameter family of distributions on an interval, with an
/// optional analytic velocity. When no analytic velocity is supplied,
/// velocity() falls back to a central difference of log-weights
/// (u_i = d/dt log p_i), centered at p(t).
class Curve {
 public:
  using Map = std::function<Distribution(double)>;
  using VelocityMap = std::function<TangentVector(double)>;

  Curve(Map map, double t_min, double t_max);
  Curve(Map map, VelocityMap velocity, double t_min, double t_max);

  /// Evaluates the curve; throws CurveDomain outside [t_min, t_max].
  Distribution at(double t) const;

  /// Velocity at t: analytic if available, otherwise velocity_fd(t, h).
  TangentVector velocity(double t, double h = kDefaultFdStep) const;

  /// Central-difference velocity from log-weights, optionally Richardson
  /// extrapolated (steps h and h/2). Requires [t-h, t+h] inside the domain.
  TangentVector velocity_fd(double t, double h = kDefaultFdStep,
                            bool richardson = false) const;

  bool has_analytic_velocity() const { return velocity_.has_value(); }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }

  /// Constant curve at p, defined for all t.
  static Curve constant(Distribution p);

  /// Exponential-family curve p_i(t) proportional to p_i exp(t a_i), with
  /// analytic velocity center(p(t), a). Defined for all practical t.
  static Curve exponential_family(Distribution p, Vec direction);

  /// Straight-line mixture path p(t) = p + t c with c_i = p_i v_i, on the
  /// largest symmetric-free interval that keeps all weights positive
  /// (shrunk by 1%). Analytic velocity c_i / p_i(t), centered.
  static Curve mixture_line(const TangentVector& v0);

 private:
  void require_inside(double t) const;

  Map map_;
  std::optional<VelocityMap> velocity_;
  double t_min_;
  double t_max_;
};

}  // namespace infogeo

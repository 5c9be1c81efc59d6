#pragma once

// The alpha-connection family on the open simplex: covariant derivatives
// along curves, geodesics by fixed-step RK4, parallel transport, and the
// duality identity that pairs nabla^(alpha) with nabla^(-alpha) across the
// Fisher metric. Everything is curve-based; Christoffel symbols are never
// materialized.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "infogeo/simplex.hpp"

namespace infogeo {

/// Connection parameter. alpha = 1 is the exponential connection, alpha = -1
/// the mixture connection, alpha = 0 the Levi-Civita connection of the
/// Fisher metric.
class Alpha {
 public:
  explicit Alpha(double value);
  double value() const { return value_; }

  static Alpha mixture() { return Alpha(-1.0); }
  static Alpha levi_civita() { return Alpha(0.0); }
  static Alpha exponential() { return Alpha(1.0); }

 private:
  double value_;
};

/// A vector field along a curve, stored as a raw component closure. The
/// tangent class at time t is obtained by centering the raw components at
/// p(t); derivatives are taken of the centered representative. An optional
/// analytic derivative (of the centered components) short-circuits the
/// central difference.
class VectorFieldAlongCurve {
 public:
  using RawField = std::function<Vec(double)>;

  VectorFieldAlongCurve(Curve curve, RawField field);
  VectorFieldAlongCurve(Curve curve, RawField field,
                        RawField centered_derivative);

  const Curve& curve() const { return curve_; }

  /// The tangent class [V(t)]_{p(t)}.
  TangentVector at(double t) const;

  Vec centered_components(double t) const;

  /// d/dt of the centered components: analytic if supplied, else central
  /// difference with step h (optionally Richardson extrapolated).
  Vec centered_derivative(double t, double h, bool richardson = false) const;

  /// Field with constant raw components (the concrete family used to model
  /// vector fields on the manifold restricted to a curve).
  static VectorFieldAlongCurve constant_raw(Curve curve, Vec raw);

  /// The curve's own velocity as a field along it. Requires an analytic
  /// velocity on the curve.
  static VectorFieldAlongCurve velocity_field(Curve curve);

 private:
  Curve curve_;
  RawField field_;
  std::optional<RawField> centered_derivative_;
};

/// Covariant derivative of the alpha-connection along the field's curve:
///   [ Vdot + (1-alpha)/2 * u V - E_{p(t)}( Vdot + (1-alpha)/2 * u V ) * n ]
/// with u the curve velocity, uV the componentwise product and n = (1,..,1).
/// The step h (used for all internal central differences) must lie in
/// [1e-8, 1e-2].
TangentVector covariant_derivative(Alpha alpha, const VectorFieldAlongCurve& vf,
                                   double t, double h = kDefaultFdStep);

/// Exponential-connection fast path, alpha = 1: [Vdot - E_{p(t)}(Vdot) n].
/// Needs no curve velocity.
TangentVector exponential_derivative(const VectorFieldAlongCurve& vf, double t,
                                     double h = kDefaultFdStep);

/// One recorded state of a geodesic trajectory.
struct GeodesicState {
  double t;
  Distribution p;
  TangentVector u;
};

/// Fixed-step RK4 integration of the alpha-geodesic equation from (p0, v0)
/// over [0, t_end], recording steps+1 states. In exponential coordinates the
/// system is dp_i = p_i u_i, du_i = -(1-alpha)/2 u_i^2 - (1+alpha)/2 E_p(u^2).
/// Throws LeftSimplex as soon as a weight leaves [kSimplexFloor, 1].
std::vector<GeodesicState> integrate_geodesic(Alpha alpha,
                                              const Distribution& p0,
                                              const TangentVector& v0,
                                              double t_end, int steps);

/// The alpha-geodesic as an evaluable Curve on [-t_end, t_end] with analytic
/// velocity. Evaluation re-integrates deterministically from t = 0 with step
/// size at most t_end / steps.
Curve geodesic(Alpha alpha, const Distribution& p0, const TangentVector& v0,
               double t_end, int steps);

/// Parallel transport of v0 along the curve from t = 0 to t_end by RK4 on
/// the linear system Vdot_i = -(1-alpha)/2 u_i V_i - (1+alpha)/2 E_p(uV).
/// The result is centered at curve(t_end).
TangentVector parallel_transport(Alpha alpha, const Curve& curve,
                                 const TangentVector& v0, double t_end,
                                 int steps);

/// Residual of the duality identity
///   X g_F(Y, Z) = g_F(D^(alpha) Y, Z) + g_F(Y, D^(-alpha) Z)
/// for one configuration: constant-raw fields Y, Z centered pointwise and a
/// curve through p with velocity X, all derivatives at step h.
double duality_residual(Alpha alpha, const Distribution& p, const Vec& x_raw,
                        const Vec& y_raw, const Vec& z_raw,
                        double h = kDefaultFdStep);

/// Max duality residual over 20 random configurations at p.
double check_duality(Alpha alpha, const Distribution& p, std::uint64_t seed);

}  // namespace infogeo

#pragma once

// Dombrowski splitting of the double tangent bundle for the exponential
// connection, and the almost-Hermitian triple (G, Omega, J) it induces on
// the tangent bundle of the simplex. Double tangents are always stored in
// split coordinates (foot, horizontal, vertical), never as raw jets.
//
// The structure is in fact Kahler: Omega is closed (checked numerically
// below), and the covering of the punctured projective space identifies
// (G, Omega, J) with the Fubini-Study structure through local
// biholomorphisms, so J is integrable. Integrability is a consequence of
// the verified pullback identities, not a separate test.

#include <Eigen/Dense>

#include "infogeo/connections.hpp"
#include "infogeo/simplex.hpp"

namespace infogeo {

/// An element of T(TP) in split coordinates ([u]_p, [v]_p, [w]_p): the foot
/// point of the fiber, the horizontal (base-motion) part and the vertical
/// (fiber-motion) part. All three share the same base distribution.
class SplitDoubleTangent {
 public:
  SplitDoubleTangent(TangentVector foot, TangentVector horizontal,
                     TangentVector vertical);

  const Distribution& base() const { return foot_.base(); }
  const TangentVector& foot() const { return foot_; }
  const TangentVector& horizontal() const { return horizontal_; }
  const TangentVector& vertical() const { return vertical_; }

 private:
  TangentVector foot_;
  TangentVector horizontal_;
  TangentVector vertical_;
};

/// Sasaki-type metric of the splitting: G(x, y) = g_F(v, v') + g_F(w, w').
/// Requires equal base and equal foot.
double split_metric_G(const SplitDoubleTangent& x, const SplitDoubleTangent& y);

/// Fundamental 2-form: Omega(x, y) = g_F(v, w') - g_F(w, v'). Antisymmetric.
double split_form_Omega(const SplitDoubleTangent& x, const SplitDoubleTangent& y);

/// Almost complex structure J(u, v, w) = (u, -w, v); J^2 = -Id.
SplitDoubleTangent split_J(const SplitDoubleTangent& x);

/// Which representative curve realizes a prescribed 1-jet on the base.
enum class RepresentativeCurve { kExponentialGeodesic, kMixtureGeodesic };

/// The curve in TP whose 1-jet at t = 0 realizes the split double tangent x:
///   gamma(t) = [u + t w - E_{p(t)}(u + t w) n]_{p(t)},
/// where p(t) is a curve through the base with initial velocity [v]_p. The
/// representative defaults to the exponential geodesic for reproducibility;
/// any curve with that 1-jet is admissible and must produce the same jet
/// data, which the tests exercise with the mixture path.
VectorFieldAlongCurve phi_inverse_curve(
    const SplitDoubleTangent& x,
    RepresentativeCurve kind = RepresentativeCurve::kExponentialGeodesic);

/// Canonical connector of the exponential connection applied to a curve in
/// TP (a field along its base curve): K = D^(1)/dt, i.e. the exponential
/// covariant derivative of the field.
TangentVector connector(const VectorFieldAlongCurve& gamma, double t,
                        double h = kDefaultFdStep);

/// Global chart on TP used for coordinate-free finite differencing:
/// coords = (p_1..p_{n-1}, u_1..u_{n-1}), with p_n and u_n recovered from
/// the unit-sum and zero-expectation constraints.
class TangentBundleChart {
 public:
  explicit TangentBundleChart(int n);

  int n() const { return n_; }
  int dim() const { return 2 * (n_ - 1); }

  Eigen::VectorXd to_coords(const TangentVector& point) const;
  TangentVector to_point(const Eigen::VectorXd& coords) const;

  /// Split components, at the point with the given coordinates, of the
  /// vector field that is constant (equal to delta) in this chart. Constant
  /// chart fields have vanishing Lie brackets, which the closedness check
  /// below relies on.
  SplitDoubleTangent constant_field_at(const Eigen::VectorXd& coords,
                                       const Eigen::VectorXd& delta) const;

 private:
  int n_;
};

/// Finite-difference residual of the 3-term closedness formula
///   dOmega(X,Y,Z) = X Omega(Y,Z) - Y Omega(X,Z) + Z Omega(X,Y)
/// for constant chart fields X, Y, Z (whose brackets vanish), with
/// symmetrized differences of the stated step.
double omega_closedness_residual(const TangentBundleChart& chart,
                                 const Eigen::VectorXd& coords,
                                 const Eigen::VectorXd& field_x,
                                 const Eigen::VectorXd& field_y,
                                 const Eigen::VectorXd& field_z,
                                 double step = 1e-4);

}  // namespace infogeo

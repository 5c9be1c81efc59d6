#pragma once

// Complex projective space through unit-vector charts: points as normalized
// ray representatives, tangent spaces as orthogonal complements, and the
// Fubini-Study metric and symplectic form evaluated at chart centers.
//
// Hermitian convention: the product is linear in the SECOND argument,
// <a, b> = sum_i conj(a_i) b_i. Sign conventions downstream depend on this.

#include <complex>
#include <cstdint>
#include <vector>

#include "infogeo/errors.hpp"

namespace infogeo {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr double kUnitNormTol = 1e-12;
inline constexpr double kOrthogonalityTol = 1e-12;
inline constexpr double kRayEqualityTol = 1e-10;
inline constexpr double kChartDomainTol = 1e-12;

/// Hermitian product, linear in the second argument.
Complex hermitian(const CVec& a, const CVec& b);

double norm(const CVec& a);

/// A point of projective space stored as a unit-norm representative. Two
/// points denote the same ray when |<z1, z2>| = 1 within kRayEqualityTol;
/// the representative phase is not part of the value.
class ProjectivePoint {
 public:
  /// Validates that z is unit norm (within kUnitNormTol); does not rescale.
  explicit ProjectivePoint(CVec z);

  /// Normalizes an arbitrary nonzero vector to a unit representative.
  static ProjectivePoint from_ray(CVec z);

  int size() const { return static_cast<int>(z_.size()); }
  const CVec& representative() const { return z_; }

 private:
  CVec z_;
};

/// Same ray: | |<z1, z2>| - 1 | <= tol.
bool ray_equal(const ProjectivePoint& a, const ProjectivePoint& b,
               double tol = kRayEqualityTol);

/// A tangent vector at a chart center: a complex vector in the orthogonal
/// complement of the base representative.
class ProjectiveTangent {
 public:
  ProjectiveTangent(ProjectivePoint base, CVec vector);

  const ProjectivePoint& base() const { return base_; }
  const CVec& vector() const { return vector_; }
  int size() const { return static_cast<int>(vector_.size()); }

 private:
  ProjectivePoint base_;
  CVec vector_;
};

/// Chart map phi_u([z]) = z / <u, z> - u, valued in u-perp. Throws
/// OutsideChart when |<u, z>| <= kChartDomainTol.
CVec chart_forward(const ProjectivePoint& u, const ProjectivePoint& z);

/// Chart inverse phi_u^{-1}(xi) = [u + xi]. xi must be orthogonal to u.
ProjectivePoint chart_backward(const ProjectivePoint& u, const CVec& xi);

struct FubiniStudyPairing {
  double g;      // Re <xi1, xi2>
  double omega;  // Im <xi1, xi2>
};

/// Fubini-Study pairing at the chart center u. Both tangents must be based
/// at the same representative u (componentwise, within kRayEqualityTol);
/// use transfer_tangent to change representatives first.
FubiniStudyPairing fubini_study(const ProjectivePoint& u,
                                const ProjectiveTangent& xi1,
                                const ProjectiveTangent& xi2);

/// Complex structure at a chart center: multiplication by i on u-perp.
ProjectiveTangent J_FS(const ProjectiveTangent& xi);

/// Moves a tangent between two unit representatives of the same ray via a
/// central-difference pushforward of the chart transition phi_{u2} o
/// phi_{u1}^{-1}. Pairings are invariant under this transfer, which is the
/// numerical content of the metric being globally well defined.
ProjectiveTangent transfer_tangent(const ProjectivePoint& u1,
                                   const ProjectivePoint& u2,
                                   const ProjectiveTangent& xi,
                                   double h = 1e-5);

/// Deterministic unit-norm sample (complex standard normals, normalized).
ProjectivePoint random_projective_point(int n, std::uint64_t seed);

/// Deterministic tangent sample at u (complex normals projected onto u-perp).
ProjectiveTangent random_projective_tangent(const ProjectivePoint& u,
                                            std::uint64_t seed);

}  // namespace infogeo

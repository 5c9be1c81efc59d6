#include "infogeo/projective.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "infogeo/rng.hpp"

namespace infogeo {

namespace {

void require_same_length(size_t a, size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": length " << a << " vs " << b;
    throw DimensionMismatch(os.str());
  }
}

bool same_representative(const CVec& a, const CVec& b, double tol) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol) return false;
  }
  return true;
}

}  // namespace

Complex hermitian(const CVec& a, const CVec& b) {
  require_same_length(a.size(), b.size(), "hermitian");
  Complex s(0.0, 0.0);
  for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const CVec& a) {
  double s = 0.0;
  for (const Complex& x : a) s += std::norm(x);
  return std::sqrt(s);
}

ProjectivePoint::ProjectivePoint(CVec z) : z_(std::move(z)) {
  if (z_.size() < 2) {
    throw DimensionMismatch("ProjectivePoint needs dimension >= 2");
  }
  double n = norm(z_);
  if (std::abs(n - 1.0) > kUnitNormTol) {
    std::ostringstream os;
    os << "representative norm " << n << " deviates from 1 beyond "
       << kUnitNormTol;
    throw NotNormalized(os.str());
  }
}

ProjectivePoint ProjectivePoint::from_ray(CVec z) {
  double n = norm(z);
  if (!(n > 1e-300)) throw InvalidArgument("from_ray: zero vector");
  for (Complex& x : z) x /= n;
  return ProjectivePoint(std::move(z));
}

bool ray_equal(const ProjectivePoint& a, const ProjectivePoint& b, double tol) {
  if (a.size() != b.size()) return false;
  return std::abs(std::abs(hermitian(a.representative(), b.representative())) -
                  1.0) <= tol;
}

ProjectiveTangent::ProjectiveTangent(ProjectivePoint base, CVec vector)
    : base_(std::move(base)), vector_(std::move(vector)) {
  require_same_length(base_.representative().size(), vector_.size(),
                      "ProjectiveTangent");
  double ip = std::abs(hermitian(base_.representative(), vector_));
  if (ip > kOrthogonalityTol) {
    std::ostringstream os;
    os << "tangent not orthogonal to its base: |<z, xi>| = " << ip;
    throw NotOrthogonal(os.str());
  }
}

CVec chart_forward(const ProjectivePoint& u, const ProjectivePoint& z) {
  require_same_length(u.representative().size(), z.representative().size(),
                      "chart_forward");
  Complex d = hermitian(u.representative(), z.representative());
  if (std::abs(d) <= kChartDomainTol) {
    throw OutsideChart("chart_forward: point lies outside the chart of u");
  }
  CVec out(z.representative().size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = z.representative()[i] / d - u.representative()[i];
  }
  return out;
}

ProjectivePoint chart_backward(const ProjectivePoint& u, const CVec& xi) {
  require_same_length(u.representative().size(), xi.size(), "chart_backward");
  double ip = std::abs(hermitian(u.representative(), xi));
  if (ip > kOrthogonalityTol) {
    std::ostringstream os;
    os << "chart_backward: |<u, xi>| = " << ip << " is not orthogonal";
    throw NotOrthogonal(os.str());
  }
  CVec sum(xi.size());
  for (size_t i = 0; i < sum.size(); ++i) sum[i] = u.representative()[i] + xi[i];
  return ProjectivePoint::from_ray(std::move(sum));
}

FubiniStudyPairing fubini_study(const ProjectivePoint& u,
                                const ProjectiveTangent& xi1,
                                const ProjectiveTangent& xi2) {
  if (!same_representative(xi1.base().representative(), u.representative(),
                           kRayEqualityTol) ||
      !same_representative(xi2.base().representative(), u.representative(),
                           kRayEqualityTol)) {
    throw BaseMismatch(
        "fubini_study: tangents must be based at the representative u");
  }
  Complex s = hermitian(xi1.vector(), xi2.vector());
  return {s.real(), s.imag()};
}

ProjectiveTangent J_FS(const ProjectiveTangent& xi) {
  CVec out(xi.vector().size());
  const Complex i_unit(0.0, 1.0);
  for (size_t k = 0; k < out.size(); ++k) out[k] = i_unit * xi.vector()[k];
  return ProjectiveTangent(xi.base(), std::move(out));
}

ProjectiveTangent transfer_tangent(const ProjectivePoint& u1,
                                   const ProjectivePoint& u2,
                                   const ProjectiveTangent& xi, double h) {
  if (!ray_equal(u1, u2)) {
    throw BaseMismatch("transfer_tangent: u1 and u2 must span the same ray");
  }
  if (!same_representative(xi.base().representative(), u1.representative(),
                           kRayEqualityTol)) {
    throw BaseMismatch("transfer_tangent: xi is not based at u1");
  }
  if (std::abs(hermitian(u2.representative(), u1.representative())) <=
      kChartDomainTol) {
    throw OutsideChart("transfer_tangent: u1 outside the chart of u2");
  }
  // Central difference of s -> phi_{u2}([u1 + s xi]); phi is scale invariant
  // so the unnormalized representative is fine.
  auto transition = [&](double s) {
    CVec z(u1.representative().size());
    for (size_t i = 0; i < z.size(); ++i) {
      z[i] = u1.representative()[i] + s * xi.vector()[i];
    }
    return chart_forward(u2, ProjectivePoint::from_ray(std::move(z)));
  };
  CVec plus = transition(h);
  CVec minus = transition(-h);
  CVec out(plus.size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = (plus[i] - minus[i]) / (2.0 * h);
  }
  // Remove the finite-difference residue along u2 so the orthogonality
  // invariant holds exactly.
  Complex ip = hermitian(u2.representative(), out);
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] -= ip * u2.representative()[i];
  }
  return ProjectiveTangent(u2, std::move(out));
}

ProjectivePoint random_projective_point(int n, std::uint64_t seed) {
  if (n < 2) throw DimensionMismatch("random_projective_point needs n >= 2");
  Rng rng(seed);
  CVec z(static_cast<size_t>(n));
  for (Complex& x : z) {
    double re = rng.normal();
    double im = rng.normal();
    x = Complex(re, im);
  }
  return ProjectivePoint::from_ray(std::move(z));
}

ProjectiveTangent random_projective_tangent(const ProjectivePoint& u,
                                            std::uint64_t seed) {
  Rng rng(seed);
  CVec v(u.representative().size());
  for (Complex& x : v) {
    double re = rng.normal();
    double im = rng.normal();
    x = Complex(re, im);
  }
  Complex ip = hermitian(u.representative(), v);
  for (size_t i = 0; i < v.size(); ++i) v[i] -= ip * u.representative()[i];
  return ProjectiveTangent(u, std::move(v));
}

}  // namespace infogeo

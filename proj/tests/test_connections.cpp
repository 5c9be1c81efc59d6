#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "infogeo/connections.hpp"
#include "infogeo/rng.hpp"

using namespace infogeo;

namespace {

Vec normals(std::uint64_t seed, int n, double scale = 1.0) {
  Rng rng(seed);
  Vec v(static_cast<size_t>(n));
  for (double& x : v) x = scale * rng.normal();
  return v;
}

double sup_diff(const Vec& a, const Vec& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

}  // namespace

TEST_CASE("alpha named constructors") {
  CHECK(Alpha::mixture().value() == -1.0);
  CHECK(Alpha::levi_civita().value() == 0.0);
  CHECK(Alpha::exponential().value() == 1.0);
  CHECK_THROWS_AS(Alpha(std::nan("")), InvalidArgument);
}

TEST_CASE("constant curve and constant centered field differentiate to zero") {
  Distribution p = make_distribution({0.5, 0.25, 0.25});
  Curve c = Curve::constant(p);
  VectorFieldAlongCurve f =
      VectorFieldAlongCurve::constant_raw(c, {1.0, -1.0, -1.0});
  for (double a : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    TangentVector d = covariant_derivative(Alpha(a), f, 0.0);
    for (double x : d.components()) CHECK(std::abs(x) <= 1e-14);
  }
}

TEST_CASE("alpha = 1 reduces to the exponential derivative") {
  for (int s = 0; s < 100; ++s) {
    int n = 2 + s % 4;
    Distribution p = random_point(n, derive_seed(101, s));
    Curve curve = Curve::exponential_family(p, normals(derive_seed(102, s), n));
    VectorFieldAlongCurve f = VectorFieldAlongCurve::constant_raw(
        curve, normals(derive_seed(103, s), n));
    Rng rng(derive_seed(104, s));
    double t = rng.uniform(-0.3, 0.3);
    TangentVector a = covariant_derivative(Alpha::exponential(), f, t);
    TangentVector b = exponential_derivative(f, t);
    REQUIRE(sup_diff(a.components(), b.components()) <= 1e-10);
  }
}

TEST_CASE("exponential derivative hand cases") {
  Distribution p = make_distribution({0.5, 0.25, 0.25});
  Curve c = Curve::constant(p);

  // V(t) = t w over a constant base: derivative is center(p, w).
  Vec w{2.0, -1.0, 0.5};
  VectorFieldAlongCurve lin(c, [w](double t) {
    Vec out(w.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = t * w[i];
    return out;
  });
  TangentVector d = exponential_derivative(lin, 0.0);
  TangentVector expected = center(p, w);
  CHECK(sup_diff(d.components(), expected.components()) <= 1e-10);

  // Constant field: zero.
  VectorFieldAlongCurve constant =
      VectorFieldAlongCurve::constant_raw(c, {1.0, 2.0, 3.0});
  TangentVector z = exponential_derivative(constant, 0.0);
  for (double x : z.components()) CHECK(std::abs(x) <= 1e-12);
}

TEST_CASE("e-geodesic velocity field is exponentially parallel") {
  for (int s = 0; s < 25; ++s) {
    int n = 2 + s % 4;
    Distribution p = random_point(n, derive_seed(111, s));
    Curve curve = Curve::exponential_family(p, normals(derive_seed(112, s), n));
    VectorFieldAlongCurve vel = VectorFieldAlongCurve::velocity_field(curve);
    Rng rng(derive_seed(113, s));
    double t = rng.uniform(-0.2, 0.2);
    TangentVector d = exponential_derivative(vel, t);
    for (double x : d.components()) REQUIRE(std::abs(x) <= 1e-8);
  }
}

TEST_CASE("geodesic with zero velocity is constant") {
  Distribution p = make_distribution({0.3, 0.3, 0.4});
  TangentVector v0(p, {0.0, 0.0, 0.0});
  auto traj = integrate_geodesic(Alpha::levi_civita(), p, v0, 1.0, 32);
  for (const GeodesicState& st : traj) {
    CHECK(sup_diff(st.p.weights(), p.weights()) <= 1e-14);
  }
}

TEST_CASE("geodesic closed forms at alpha = +1 and alpha = -1") {
  for (int s = 0; s < 10; ++s) {
    int n = 2 + s % 4;
    Distribution p0 = random_point(n, derive_seed(121, s));
    Vec raw = normals(derive_seed(122, s), n);
    TangentVector v0 = center(p0, raw);

    auto traj = integrate_geodesic(Alpha::exponential(), p0, v0, 1.0, 256);
    double worst = 0.0;
    for (const GeodesicState& st : traj) {
      Vec expected(p0.weights());
      double sum = 0.0;
      for (size_t i = 0; i < expected.size(); ++i) {
        expected[i] *= std::exp(st.t * v0.components()[i]);
        sum += expected[i];
      }
      for (double& x : expected) x /= sum;
      worst = std::max(worst, sup_diff(st.p.weights(), expected));
    }
    REQUIRE(worst <= 1e-6);

    // Mixture path, velocity shrunk to stay inside over [0, 1].
    Vec c(p0.weights());
    double shrink = 1.0;
    for (size_t i = 0; i < c.size(); ++i) {
      c[i] *= v0.components()[i];
      if (c[i] < 0.0) shrink = std::min(shrink, 0.8 * p0.weights()[i] / -c[i]);
    }
    for (double& x : c) x *= shrink;
    Vec su(v0.components());
    for (double& x : su) x *= shrink;
    auto traj_m = integrate_geodesic(Alpha::mixture(), p0,
                                     TangentVector(p0, su), 1.0, 256);
    worst = 0.0;
    for (const GeodesicState& st : traj_m) {
      Vec expected(p0.weights());
      for (size_t i = 0; i < expected.size(); ++i) expected[i] += st.t * c[i];
      worst = std::max(worst, sup_diff(st.p.weights(), expected));
    }
    REQUIRE(worst <= 1e-6);
  }
}

TEST_CASE("levi-civita geodesics are self-parallel") {
  for (int s = 0; s < 10; ++s) {
    int n = 2 + s % 3;
    Distribution p0 = random_point(n, derive_seed(131, s));
    TangentVector v0 = random_tangent(p0, derive_seed(132, s));
    Curve geo = geodesic(Alpha::levi_civita(), p0, v0, 1.0, 256);
    VectorFieldAlongCurve vel = VectorFieldAlongCurve::velocity_field(geo);
    TangentVector d = covariant_derivative(Alpha::levi_civita(), vel, 0.4);
    for (double x : d.components()) REQUIRE(std::abs(x) <= 2e-6);
  }
}

TEST_CASE("geodesic leaves the simplex -> LeftSimplex with exit time") {
  Distribution p0 = make_distribution({0.5, 0.5});
  TangentVector v0(p0, {6.0, -6.0});
  // Mixture geodesic moves along p + t c, c = (3, -3): exits near t = 1/6.
  try {
    integrate_geodesic(Alpha::mixture(), p0, v0, 1.0, 256);
    FAIL("expected LeftSimplex");
  } catch (const LeftSimplex& e) {
    CHECK(e.exit_time() > 0.1);
    CHECK(e.exit_time() < 0.25);
  }
}

TEST_CASE("geodesic argument validation") {
  Distribution p0 = make_distribution({0.5, 0.5});
  TangentVector v0(p0, {1.0, -1.0});
  CHECK_THROWS_AS(integrate_geodesic(Alpha::exponential(), p0, v0, 1.0, 8),
                  InvalidArgument);
  Distribution q = make_distribution({0.4, 0.6});
  TangentVector vq = center(q, {1.0, 0.0});
  CHECK_THROWS_AS(integrate_geodesic(Alpha::exponential(), p0, vq, 1.0, 64),
                  BaseMismatch);
}

TEST_CASE("parallel transport along a constant curve is the identity") {
  Distribution p = make_distribution({0.2, 0.3, 0.5});
  Curve c = Curve::constant(p);
  TangentVector v0 = center(p, {1.0, -2.0, 0.5});
  TangentVector v1 = parallel_transport(Alpha(0.3), c, v0, 1.0, 64);
  CHECK(sup_diff(v0.components(), v1.components()) <= 1e-12);
}

TEST_CASE("dual transports preserve the Fisher pairing; transport reverses") {
  for (int s = 0; s < 10; ++s) {
    int n = 2 + s % 4;
    Distribution p = random_point(n, derive_seed(141, s));
    Curve curve =
        Curve::exponential_family(p, normals(derive_seed(142, s), n, 0.7));
    TangentVector v0 = random_tangent(p, derive_seed(143, s));
    TangentVector w0 = random_tangent(p, derive_seed(144, s));
    Alpha alpha(s % 2 == 0 ? 1.0 : -0.5);
    Alpha dual(-alpha.value());

    TangentVector v1 = parallel_transport(alpha, curve, v0, 1.0, 256);
    TangentVector w1 = parallel_transport(dual, curve, w0, 1.0, 256);
    REQUIRE(std::abs(fisher_metric(v1, w1) - fisher_metric(v0, w0)) <= 1e-6);

    Curve curve_copy = curve;
    Curve reversed(
        [curve_copy](double t) { return curve_copy.at(1.0 - t); },
        [curve_copy](double t) { return -1.0 * curve_copy.velocity(1.0 - t); },
        0.0, 1.0);
    TangentVector back = parallel_transport(alpha, reversed, v1, 1.0, 256);
    REQUIRE(sup_diff(back.components(), v0.components()) <= 1e-6);
  }
}

TEST_CASE("duality residual is small across the alpha grid") {
  // Self-duality of the Levi-Civita connection at the stated seed.
  Distribution p3 = random_point(3, 42);
  CHECK(check_duality(Alpha::levi_civita(), p3, 42) <= 1e-6);

  // Exponential connection paired with the mixture connection.
  for (int n : {2, 3, 5}) {
    Distribution p =
        random_point(n, derive_seed(151, static_cast<std::uint64_t>(n)));
    CHECK(check_duality(Alpha::exponential(), p, 7) <= 1e-6);
  }

  for (double a : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    for (int n : {2, 3, 5, 8}) {
      std::uint64_t tag = static_cast<std::uint64_t>(100 + 10 * n) +
                          static_cast<std::uint64_t>(2.0 * a + 4.0);
      Distribution p = random_point(n, derive_seed(152, tag));
      REQUIRE(check_duality(Alpha(a), p, 11) <= 1e-6);
    }
  }
}

TEST_CASE("duality residual scales as h^2") {
  Distribution p = random_point(4, 61);
  Vec x = normals(62, 4), y = normals(63, 4), z = normals(64, 4);
  double big = duality_residual(Alpha(0.5), p, x, y, z, 2e-3);
  double small = duality_residual(Alpha(0.5), p, x, y, z, 1e-3);
  double ratio = big / small;
  CHECK(ratio >= 4.0 * 0.7);
  CHECK(ratio <= 4.0 * 1.3);
}

TEST_CASE("richardson extrapolation of field derivatives") {
  Distribution p = random_point(3, 71);
  Curve curve = Curve::exponential_family(p, normals(72, 3));
  VectorFieldAlongCurve f =
      VectorFieldAlongCurve::constant_raw(curve, normals(73, 3));
  // Fourth-order estimate agrees with the plain central difference at a
  // much smaller step.
  Vec rich = f.centered_derivative(0.0, 1e-3, true);
  Vec fine = f.centered_derivative(0.0, 1e-5, false);
  CHECK(sup_diff(rich, fine) <= 1e-9);
}

TEST_CASE("finite-difference step range is enforced") {
  Distribution p = make_distribution({0.5, 0.5});
  Curve c = Curve::constant(p);
  VectorFieldAlongCurve f = VectorFieldAlongCurve::constant_raw(c, {1.0, -1.0});
  CHECK_THROWS_AS(covariant_derivative(Alpha(0.0), f, 0.0, 1e-9),
                  InvalidArgument);
  CHECK_THROWS_AS(covariant_derivative(Alpha(0.0), f, 0.0, 0.1),
                  InvalidArgument);
}

TEST_CASE("covariant derivative respects the curve domain") {
  Distribution p = make_distribution({0.5, 0.5});
  Distribution p_copy = p;
  Curve c([p_copy](double) { return p_copy; }, 0.0, 1.0);
  VectorFieldAlongCurve f = VectorFieldAlongCurve::constant_raw(c, {1.0, -1.0});
  CHECK_THROWS_AS(covariant_derivative(Alpha(0.0), f, 0.0, 1e-3), CurveDomain);
  CHECK_NOTHROW(covariant_derivative(Alpha(0.0), f, 0.5, 1e-3));
}

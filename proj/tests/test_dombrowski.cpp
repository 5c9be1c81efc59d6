#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "infogeo/dombrowski.hpp"
#include "infogeo/rng.hpp"

using namespace infogeo;

namespace {

double sup_diff(const Vec& a, const Vec& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

SplitDoubleTangent sample_split(int n, std::uint64_t seed) {
  Distribution p = random_point(n, derive_seed(seed, 0));
  return SplitDoubleTangent(random_tangent(p, derive_seed(seed, 1)),
                            random_tangent(p, derive_seed(seed, 2)),
                            random_tangent(p, derive_seed(seed, 3)));
}

}  // namespace

TEST_CASE("split_J swaps and negates the right slots") {
  Distribution p = make_distribution({0.5, 0.5});
  TangentVector u(p, {0.5, -0.5});
  TangentVector v(p, {1.0, -1.0});
  TangentVector w(p, {2.0, -2.0});
  SplitDoubleTangent x(u, v, w);

  SplitDoubleTangent jx = split_J(x);
  CHECK(jx.foot().components() == u.components());
  CHECK(jx.horizontal().components()[0] == -2.0);
  CHECK(jx.horizontal().components()[1] == 2.0);
  CHECK(jx.vertical().components() == v.components());

  // J of (u, v, 0) -> (u, 0, v).
  TangentVector zero(p, {0.0, 0.0});
  SplitDoubleTangent jv0 = split_J(SplitDoubleTangent(u, v, zero));
  CHECK(jv0.horizontal().components()[0] == 0.0);
  CHECK(jv0.vertical().components() == v.components());

  // J^2 = -Id on (horizontal, vertical), exactly.
  SplitDoubleTangent jjx = split_J(jx);
  for (int i = 0; i < 2; ++i) {
    CHECK(jjx.horizontal().components()[i] == -v.components()[i]);
    CHECK(jjx.vertical().components()[i] == -w.components()[i]);
  }
}

TEST_CASE("split metric hand values") {
  Distribution p = make_distribution({0.5, 0.5});
  TangentVector u(p, {0.0, 0.0});
  TangentVector v(p, {1.0, -1.0});
  TangentVector w(p, {1.0, -1.0});
  TangentVector zero(p, {0.0, 0.0});

  SplitDoubleTangent x(u, v, zero);
  CHECK(split_metric_G(x, x) == doctest::Approx(0.25).epsilon(1e-15));

  SplitDoubleTangent y(u, v, w);
  CHECK(split_metric_G(y, y) == doctest::Approx(0.5).epsilon(1e-15));

  SplitDoubleTangent z(u, zero, zero);
  CHECK(split_metric_G(z, y) == 0.0);
}

TEST_CASE("split form hand values and antisymmetry") {
  Distribution p = make_distribution({0.5, 0.5});
  TangentVector u(p, {0.0, 0.0});
  TangentVector e(p, {1.0, -1.0});
  TangentVector zero(p, {0.0, 0.0});

  SplitDoubleTangent x(u, e, zero);  // v = e, w = 0
  SplitDoubleTangent y(u, zero, e);  // vbar = 0, wbar = e
  CHECK(split_form_Omega(x, y) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(split_form_Omega(y, x) == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(split_form_Omega(x, x) == 0.0);
}

TEST_CASE("hermitian compatibility and fundamental-form identity") {
  for (int s = 0; s < 200; ++s) {
    int n = 2 + s % 4;
    std::uint64_t seed = derive_seed(211, s);
    Distribution p = random_point(n, derive_seed(seed, 0));
    TangentVector u = random_tangent(p, derive_seed(seed, 1));
    SplitDoubleTangent x(u, random_tangent(p, derive_seed(seed, 2)),
                         random_tangent(p, derive_seed(seed, 3)));
    SplitDoubleTangent y(u, random_tangent(p, derive_seed(seed, 4)),
                         random_tangent(p, derive_seed(seed, 5)));
    REQUIRE(std::abs(split_metric_G(split_J(x), split_J(y)) -
                     split_metric_G(x, y)) <= 1e-14);
    REQUIRE(std::abs(split_form_Omega(x, y) -
                     split_metric_G(split_J(x), y)) <= 1e-14);
  }
}

TEST_CASE("foot and base mismatches are rejected") {
  Distribution p = make_distribution({0.5, 0.5});
  Distribution q = make_distribution({0.4, 0.6});
  TangentVector u1(p, {0.5, -0.5});
  TangentVector u2(p, {1.5, -1.5});
  TangentVector v(p, {1.0, -1.0});
  SplitDoubleTangent a(u1, v, v);
  SplitDoubleTangent b(u2, v, v);
  CHECK_THROWS_AS(split_metric_G(a, b), FootMismatch);
  CHECK_THROWS_AS(SplitDoubleTangent(u1, v, center(q, {1.0, 0.0})),
                  BaseMismatch);
}

TEST_CASE("phi inverse curve: zero motion gives a constant curve") {
  Distribution p = make_distribution({0.5, 0.25, 0.25});
  TangentVector u = center(p, {1.0, 0.0, 0.0});
  TangentVector zero(p, {0.0, 0.0, 0.0});
  SplitDoubleTangent x(u, zero, zero);
  VectorFieldAlongCurve gamma = phi_inverse_curve(x);
  for (double t : {-0.5, 0.0, 0.5}) {
    CHECK(sup_diff(gamma.at(t).components(), u.components()) <= 1e-14);
    CHECK(sup_diff(gamma.curve().at(t).weights(), p.weights()) <= 1e-14);
  }
}

TEST_CASE("connector and projection recover the split data") {
  for (int s = 0; s < 50; ++s) {
    int n = 2 + s % 4;
    SplitDoubleTangent x = sample_split(n, derive_seed(221, s));
    VectorFieldAlongCurve gamma = phi_inverse_curve(x);

    // K(d gamma / dt at 0) = [w]_p.
    TangentVector k = connector(gamma, 0.0);
    REQUIRE(sup_diff(k.components(), x.vertical().components()) <= 1e-8);

    // Pushforward of the bundle projection = base-curve velocity = [v]_p.
    TangentVector v_fd = gamma.curve().velocity_fd(0.0, 1e-5);
    REQUIRE(sup_diff(v_fd.components(), x.horizontal().components()) <= 1e-8);
  }
}

TEST_CASE("connector hand cases") {
  Distribution p = make_distribution({0.5, 0.25, 0.25});
  Curve c = Curve::constant(p);

  // Constant curve in TP: connector vanishes.
  TangentVector u = center(p, {1.0, -1.0, 0.5});
  Vec uc = u.components();
  VectorFieldAlongCurve constant(c, [uc](double) { return uc; });
  TangentVector k0 = connector(constant, 0.0);
  for (double x : k0.components()) CHECK(std::abs(x) <= 1e-12);

  // gamma(t) = [u + t w] over a constant base: connector is center(p, w).
  Vec w{1.0, 2.0, -0.5};
  VectorFieldAlongCurve lin(c, [uc, w](double t) {
    Vec out(uc.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = uc[i] + t * w[i];
    return out;
  });
  TangentVector k1 = connector(lin, 0.0);
  TangentVector expected = center(p, w);
  CHECK(sup_diff(k1.components(), expected.components()) <= 1e-10);
}

TEST_CASE("jet data does not depend on the representative curve") {
  for (int s = 0; s < 40; ++s) {
    int n = 2 + s % 4;
    SplitDoubleTangent x = sample_split(n, derive_seed(231, s));
    VectorFieldAlongCurve via_e =
        phi_inverse_curve(x, RepresentativeCurve::kExponentialGeodesic);
    VectorFieldAlongCurve via_m =
        phi_inverse_curve(x, RepresentativeCurve::kMixtureGeodesic);

    TangentVector k_e = connector(via_e, 0.0);
    TangentVector k_m = connector(via_m, 0.0);
    REQUIRE(sup_diff(k_e.components(), k_m.components()) <= 2e-6);

    TangentVector v_e = via_e.curve().velocity_fd(0.0, 1e-5);
    TangentVector v_m = via_m.curve().velocity_fd(0.0, 1e-5);
    REQUIRE(sup_diff(v_e.components(), v_m.components()) <= 2e-6);
  }
}

TEST_CASE("tangent bundle chart round trip") {
  TangentBundleChart chart(4);
  for (int s = 0; s < 50; ++s) {
    Distribution p = random_point(4, derive_seed(241, s));
    TangentVector u = random_tangent(p, derive_seed(242, s));
    Eigen::VectorXd coords = chart.to_coords(u);
    TangentVector back = chart.to_point(coords);
    REQUIRE(sup_diff(back.base().weights(), p.weights()) <= 1e-12);
    REQUIRE(sup_diff(back.components(), u.components()) <= 1e-12);
  }
  Eigen::VectorXd bad(6);
  bad << 0.9, 0.9, 0.9, 0.0, 0.0, 0.0;
  CHECK_THROWS_AS(chart.to_point(bad), LeftSimplex);
}

TEST_CASE("constant chart field splits match a finite-difference jet") {
  TangentBundleChart chart(4);
  Rng rng(51);
  for (int s = 0; s < 30; ++s) {
    Distribution p0 = random_point(4, derive_seed(251, s));
    Vec mixed(p0.weights());
    for (double& x : mixed) x = 0.5 * x + 0.125;
    Distribution p = normalize(std::move(mixed));
    TangentVector u = random_tangent(p, derive_seed(252, s));
    Eigen::VectorXd coords = chart.to_coords(u);
    Eigen::VectorXd delta(chart.dim());
    for (int i = 0; i < delta.size(); ++i) delta(i) = rng.uniform(-1.0, 1.0);

    SplitDoubleTangent split = chart.constant_field_at(coords, delta);

    const double h = 1e-6;
    TangentVector plus = chart.to_point(coords + h * delta);
    TangentVector minus = chart.to_point(coords - h * delta);

    // Horizontal: v_i = (dp_i/dt) / p_i.
    Vec v_fd(4);
    for (int i = 0; i < 4; ++i) {
      double dp = (plus.base()[i] - minus.base()[i]) / (2.0 * h);
      v_fd[static_cast<size_t>(i)] = dp / p[i];
    }
    REQUIRE(sup_diff(split.horizontal().components(), v_fd) <= 1e-7);

    // Vertical: center of du/dt.
    Vec udot(4);
    for (int i = 0; i < 4; ++i) {
      udot[static_cast<size_t>(i)] =
          (plus.components()[static_cast<size_t>(i)] -
           minus.components()[static_cast<size_t>(i)]) /
          (2.0 * h);
    }
    TangentVector w_fd = center(p, udot);
    REQUIRE(sup_diff(split.vertical().components(), w_fd.components()) <= 1e-7);
  }
}

TEST_CASE("the fundamental form is closed") {
  for (int n : {2, 3, 5}) {
    TangentBundleChart chart(n);
    for (int s = 0; s < 25; ++s) {
      std::uint64_t seed =
          derive_seed(261, static_cast<std::uint64_t>(100 * n + s));
      Rng rng(derive_seed(seed, 9));
      Distribution r = random_point(n, derive_seed(seed, 0));
      Vec mixed(r.weights());
      for (double& x : mixed) x = 0.5 * x + 0.5 / n;
      Distribution p = normalize(std::move(mixed));
      TangentVector u = 0.5 * random_tangent(p, derive_seed(seed, 1));
      Eigen::VectorXd coords = chart.to_coords(u);
      auto field = [&]() {
        Eigen::VectorXd d(chart.dim());
        for (int i = 0; i < d.size(); ++i) d(i) = rng.uniform(-0.25, 0.25);
        return d;
      };
      double residual = omega_closedness_residual(chart, coords, field(),
                                                  field(), field(), 1e-4);
      REQUIRE(residual <= 1e-5);
    }
  }
}

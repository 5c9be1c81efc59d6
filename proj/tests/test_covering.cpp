#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "infogeo/covering.hpp"
#include "infogeo/rng.hpp"

using namespace infogeo;

namespace {

const double kPi = 3.14159265358979323846264338327950288;
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double sup_cdiff(const CVec& a, const CVec& b) {
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

TEST_CASE("tau hand values") {
  Distribution half = make_distribution({0.5, 0.5});

  // Zero phases: the ray of (1, 1)/sqrt(2).
  ProjectivePoint z0 = tau(TangentVector(half, {0.0, 0.0}));
  ProjectivePoint diag(CVec{Complex(kInvSqrt2, 0.0), Complex(kInvSqrt2, 0.0)});
  CHECK(ray_equal(z0, diag));

  // u = (pi, -pi): (i, -i)/sqrt(2), the ray of (1, -1)/sqrt(2).
  ProjectivePoint z1 = tau(TangentVector(half, {kPi, -kPi}));
  ProjectivePoint anti(CVec{Complex(kInvSqrt2, 0.0), Complex(-kInvSqrt2, 0.0)});
  CHECK(ray_equal(z1, anti));
  CHECK(std::abs(z1.representative()[0] - Complex(0.0, kInvSqrt2)) <= 1e-15);
  CHECK(std::abs(z1.representative()[1] - Complex(0.0, -kInvSqrt2)) <= 1e-15);

  // Component moduli are sqrt(p_i) > 0: the image avoids every hyperplane.
  for (int s = 0; s < 50; ++s) {
    int n = 2 + s % 4;
    Distribution p = random_point(n, derive_seed(401, s));
    TangentVector x = random_tangent(p, derive_seed(402, s));
    ProjectivePoint z = tau(x);
    for (int i = 0; i < n; ++i) {
      REQUIRE(std::abs(z.representative()[static_cast<size_t>(i)]) ==
              doctest::Approx(std::sqrt(p[i])).epsilon(1e-14));
    }
  }
}

TEST_CASE("deck action: identity, covering invariance, freeness") {
  Distribution p = make_distribution({0.5, 0.25, 0.25});
  TangentVector x = center(p, {1.0, -2.0, 0.5});

  TangentVector same = deck_action(DeckElement{{0, 0}}, x);
  CHECK(same.components() == x.components());

  for (int s = 0; s < 100; ++s) {
    int n = 2 + s % 4;
    Distribution q = random_point(n, derive_seed(411, s));
    TangentVector y = random_tangent(q, derive_seed(412, s));
    Rng rng(derive_seed(413, s));
    DeckElement k;
    bool nonzero = false;
    for (int i = 0; i + 1 < n; ++i) {
      long long v = static_cast<long long>(rng.next_u64() % 7) - 3;
      nonzero |= (v != 0);
      k.k.push_back(v);
    }
    TangentVector moved = deck_action(k, y);
    REQUIRE(ray_equal(tau(moved), tau(y)));
    if (nonzero) {
      double d = 0.0;
      for (size_t i = 0; i < y.components().size(); ++i) {
        d = std::max(d, std::abs(moved.components()[i] - y.components()[i]));
      }
      REQUIRE(d >= 1.0);  // nonzero elements move every point
    }
  }

  CHECK_THROWS_AS(deck_action(DeckElement{{1}}, x), DimensionMismatch);
}

TEST_CASE("analytic pushforward hand value") {
  Distribution half = make_distribution({0.5, 0.5});
  TangentVector u(half, {0.0, 0.0});
  TangentVector v(half, {1.0, -1.0});
  TangentVector zero(half, {0.0, 0.0});

  ProjectiveTangent xi = tau_pushforward(SplitDoubleTangent(u, v, zero));
  double quarter_sqrt2 = std::sqrt(2.0) / 4.0;
  CHECK(std::abs(xi.vector()[0] - Complex(quarter_sqrt2, 0.0)) <= 1e-15);
  CHECK(std::abs(xi.vector()[1] - Complex(-quarter_sqrt2, 0.0)) <= 1e-15);

  ProjectiveTangent nothing = tau_pushforward(SplitDoubleTangent(u, zero, zero));
  CHECK(std::abs(nothing.vector()[0]) == 0.0);
  CHECK(std::abs(nothing.vector()[1]) == 0.0);
}

TEST_CASE("pushforward lands orthogonal to the image point") {
  for (int s = 0; s < 200; ++s) {
    int n = 2 + s % 4;
    SplitDoubleTangent x = sample_split(n, derive_seed(421, s));
    ProjectiveTangent xi = tau_pushforward(x);
    REQUIRE(std::abs(hermitian(tau(x.foot()).representative(), xi.vector())) <=
            1e-12);
  }
}

TEST_CASE("finite differences validate the analytic pushforward") {
  for (int n : {2, 3, 5, 8}) {
    double worst = 0.0;
    for (int s = 0; s < 100; ++s) {
      SplitDoubleTangent x =
          sample_split(n, derive_seed(431, static_cast<std::uint64_t>(1000 * n + s)));
      ProjectiveTangent fd = tau_pushforward_fd(x, 1e-4);
      ProjectiveTangent an = tau_pushforward(x);
      worst = std::max(worst, sup_cdiff(fd.vector(), an.vector()));
    }
    REQUIRE(worst <= 2e-6);
  }
}

TEST_CASE("halving the step quarters the pushforward residual") {
  for (int n : {2, 5}) {
    double worst_h = 0.0, worst_h2 = 0.0;
    for (int s = 0; s < 100; ++s) {
      SplitDoubleTangent x =
          sample_split(n, derive_seed(441, static_cast<std::uint64_t>(1000 * n + s)));
      ProjectiveTangent an = tau_pushforward(x);
      worst_h = std::max(
          worst_h, sup_cdiff(tau_pushforward_fd(x, 1e-4).vector(), an.vector()));
      worst_h2 = std::max(
          worst_h2, sup_cdiff(tau_pushforward_fd(x, 5e-5).vector(), an.vector()));
    }
    double ratio = worst_h / worst_h2;
    REQUIRE(ratio >= 4.0 * 0.7);
    REQUIRE(ratio <= 4.0 * 1.3);
  }
}

TEST_CASE("pullback hand case: the worked n = 2 configuration") {
  Distribution half = make_distribution({0.5, 0.5});
  TangentVector u(half, {0.0, 0.0});
  TangentVector v(half, {1.0, -1.0});
  TangentVector zero(half, {0.0, 0.0});
  SplitDoubleTangent x(u, v, zero);

  CHECK(split_metric_G(x, x) == doctest::Approx(0.25).epsilon(1e-15));
  ProjectiveTangent xi = tau_pushforward(x);
  FubiniStudyPairing fs = fubini_study(tau(u), xi, xi);
  CHECK(fs.g == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(fs.omega) <= 1e-15);

  PullbackResiduals r = verify_pullback(x, x);
  CHECK(r.metric <= 1e-15);
  CHECK(r.symplectic <= 1e-15);
  CHECK(r.pairing <= 1e-15);
  CHECK(r.complex_structure <= 1e-15);
}

TEST_CASE("pullback identities hold at machine precision") {
  for (int n : {2, 3, 5, 8}) {
    PullbackResiduals r = verify_pullback_batch(n, 250, 42);
    REQUIRE(r.metric <= 1e-10);
    REQUIRE(r.symplectic <= 1e-10);
    REQUIRE(r.pairing <= 1e-10);
    REQUIRE(r.complex_structure <= 1e-12);
  }
}

TEST_CASE("pullback identities survive rotating both arguments by J") {
  for (int s = 0; s < 50; ++s) {
    int n = 2 + s % 4;
    auto [x, y] = sample_pullback_config(n, derive_seed(451, s));
    PullbackResiduals r = verify_pullback(split_J(x), split_J(y));
    REQUIRE(r.metric <= 1e-12);
    REQUIRE(r.symplectic <= 1e-12);
  }
}

TEST_CASE("finite-difference mode verifies the same identities") {
  for (int n : {2, 3, 5}) {
    PullbackResiduals r = verify_pullback_batch(
        n, 60, 77, PushforwardMode::kFiniteDifference, 1e-4);
    REQUIRE(r.metric <= 2e-6);
    REQUIRE(r.symplectic <= 2e-6);
    REQUIRE(r.pairing <= 2e-6);
    REQUIRE(r.complex_structure <= 2e-6);
  }
}

TEST_CASE("small perturbations leave the fiber: tau separates them") {
  TangentBundleChart chart(2);
  for (int s = 0; s < 200; ++s) {
    std::uint64_t seed = derive_seed(461, s);
    Rng rng(derive_seed(seed, 9));
    // Interior base point keeps the nearest phase wrap far away.
    Vec w{rng.uniform(0.15, 0.85), 0.0};
    w[1] = 1.0 - w[0];
    Distribution p = make_distribution(w);
    TangentVector x = random_tangent(p, derive_seed(seed, 1));
    Eigen::VectorXd coords = chart.to_coords(x);

    // The nearest deck translate sits 4 pi p_2 > 1.8 away in chart
    // coordinates, so no perturbation below 0.1 can wrap.
    REQUIRE(4.0 * kPi * p[1] > 0.5);

    Eigen::VectorXd dir(2);
    dir(0) = rng.normal();
    dir(1) = rng.normal();
    dir /= dir.norm();
    double radius = rng.uniform(1e-3, 1e-1);
    TangentVector moved = chart.to_point(coords + radius * dir);
    REQUIRE(!ray_equal(tau(moved), tau(x)));

    // A shift of exactly 4 pi p_2 k along the fiber coordinate is the deck
    // action in this chart and must reproduce the same ray.
    for (long long k = -3; k <= 3; ++k) {
      if (k == 0) continue;
      Eigen::VectorXd shifted = coords;
      shifted(1) += 4.0 * kPi * p[1] * static_cast<double>(k);
      REQUIRE(ray_equal(tau(chart.to_point(shifted)), tau(x)));
    }
  }
}

TEST_CASE("representative curve choice does not change the fd pushforward") {
  for (int s = 0; s < 60; ++s) {
    int n = 2 + s % 4;
    SplitDoubleTangent x = sample_split(n, derive_seed(471, s));
    ProjectiveTangent via_e =
        tau_pushforward_fd(x, 1e-4, RepresentativeCurve::kExponentialGeodesic);
    ProjectiveTangent via_m =
        tau_pushforward_fd(x, 1e-4, RepresentativeCurve::kMixtureGeodesic);
    REQUIRE(sup_cdiff(via_e.vector(), via_m.vector()) <= 2e-6);
  }
}

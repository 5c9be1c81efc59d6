#include "infogeo/checks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <thread>

#include "infogeo/connections.hpp"
#include "infogeo/natgrad.hpp"
#include "infogeo/rng.hpp"
#include "infogeo/version.hpp"

namespace infogeo {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double sup_diff(const Vec& a, const Vec& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

double sup_diff(const CVec& a, const CVec& b) {
  double worst = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a[i] - b[i]));
  }
  return worst;
}

Vec random_raw(Rng& rng, int n, double scale = 1.0) {
  Vec v(static_cast<size_t>(n));
  for (double& x : v) x = scale * rng.normal();
  return v;
}

/// Interior-biased point: midpoint of the uniform distribution and a random
/// one, so every weight is at least 1/(2n). Used by finite-difference checks
/// whose truncation error grows near the boundary.
Distribution interior_point(int n, std::uint64_t seed) {
  Distribution r = random_point(n, seed);
  Vec w(r.weights());
  for (double& x : w) x = 0.5 * x + 0.5 / static_cast<double>(n);
  return normalize(std::move(w));
}

/// Deterministic max-reduction of fn over [0, count), distributed over
/// hardware threads. Each index owns its seed, so scheduling cannot change
/// the result.
double parallel_max(int count, const std::function<double(int)>& fn) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned workers = std::min(hw, static_cast<unsigned>(count));
  if (workers <= 1) {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) worst = std::max(worst, fn(i));
    return worst;
  }
  std::vector<double> partial(workers, 0.0);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    threads.emplace_back([&, w]() {
      double local = 0.0;
      for (int i = static_cast<int>(w); i < count;
           i += static_cast<int>(workers)) {
        local = std::max(local, fn(i));
      }
      partial[w] = local;
    });
  }
  for (auto& t : threads) t.join();
  double worst = 0.0;
  for (double x : partial) worst = std::max(worst, x);
  return worst;
}

// ---------------------------------------------------------------------------
// simplex checks

CheckOutcome check_distribution_validity(const CheckContext& ctx) {
  long long samples = std::max<long long>(ctx.samples, 100);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Distribution p = random_point(ctx.n, seed);
    double sum = 0.0;
    double lo = 1.0;
    for (double w : p.weights()) {
      sum += w;
      lo = std::min(lo, w);
    }
    if (!(lo > 0.0)) worst = std::max(worst, 1.0);
    if (!(lo >= 1e-6 / ctx.n)) worst = std::max(worst, 1.0);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return {worst, samples};
}

CheckOutcome check_fisher_positive_definite(const CheckContext& ctx) {
  long long samples = std::max<long long>(ctx.samples, 1000);
  double min_g = 1e300;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Distribution p = random_point(ctx.n, derive_seed(seed, 0));
    TangentVector u = random_tangent(p, derive_seed(seed, 1));
    min_g = std::min(min_g, fisher_metric(u, u));
  }
  double err = min_g > 0.0 ? 0.0 : 1.0 + std::abs(min_g);
  return {err, samples};
}

CheckOutcome check_fisher_symmetric(const CheckContext& ctx) {
  double worst = 0.0;
  for (long long s = 0; s < ctx.samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Distribution p = random_point(ctx.n, derive_seed(seed, 0));
    TangentVector u = random_tangent(p, derive_seed(seed, 1));
    TangentVector v = random_tangent(p, derive_seed(seed, 2));
    worst = std::max(worst, std::abs(fisher_metric(u, v) - fisher_metric(v, u)));
  }
  return {worst, ctx.samples};
}

CheckOutcome check_fisher_bilinear(const CheckContext& ctx) {
  double worst = 0.0;
  for (long long s = 0; s < ctx.samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 9));
    Distribution p = random_point(ctx.n, derive_seed(seed, 0));
    TangentVector u = random_tangent(p, derive_seed(seed, 1));
    TangentVector v = random_tangent(p, derive_seed(seed, 2));
    TangentVector w = random_tangent(p, derive_seed(seed, 3));
    double a = rng.uniform(-2.0, 2.0);
    double lhs = fisher_metric(a * u + w, v);
    double rhs = a * fisher_metric(u, v) + fisher_metric(w, v);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return {worst, ctx.samples};
}

CheckOutcome check_center_projection(const CheckContext& ctx) {
  double worst = 0.0;
  for (long long s = 0; s < ctx.samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 1));
    Distribution p = random_point(ctx.n, derive_seed(seed, 0));
    Vec raw = random_raw(rng, ctx.n);
    TangentVector once = center(p, raw);
    TangentVector twice = center(p, once.components());
    worst = std::max(worst, sup_diff(once.components(), twice.components()));
  }
  return {worst, ctx.samples};
}

CheckOutcome check_curve_fd_velocity(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 200);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 1));
    Distribution p = interior_point(ctx.n, derive_seed(seed, 0));
    Vec a = random_raw(rng, ctx.n);
    Curve curve = Curve::exponential_family(p, a);
    TangentVector fd = curve.velocity_fd(0.0, 1e-5);
    TangentVector exact = center(p, a);
    worst = std::max(worst, sup_diff(fd.components(), exact.components()));
  }
  return {worst, samples};
}

// ---------------------------------------------------------------------------
// connection checks

CheckOutcome check_alpha1_reduction(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 200);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 1));
    Distribution p = interior_point(ctx.n, derive_seed(seed, 0));
    Curve curve = Curve::exponential_family(p, random_raw(rng, ctx.n));
    VectorFieldAlongCurve field =
        VectorFieldAlongCurve::constant_raw(curve, random_raw(rng, ctx.n));
    double t = rng.uniform(-0.3, 0.3);
    TangentVector a = covariant_derivative(Alpha::exponential(), field, t);
    TangentVector b = exponential_derivative(field, t);
    worst = std::max(worst, sup_diff(a.components(), b.components()));
  }
  return {worst, samples};
}

CheckOutcome check_connection_linearity(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 200);
  const double alphas[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 1));
    Distribution p = interior_point(ctx.n, derive_seed(seed, 0));
    Curve curve = Curve::exponential_family(p, random_raw(rng, ctx.n));
    Vec raw1 = random_raw(rng, ctx.n);
    Vec raw2 = random_raw(rng, ctx.n);
    double scale = rng.uniform(-2.0, 2.0);
    Alpha alpha(alphas[s % 5]);
    auto field = [&](Vec raw) {
      return VectorFieldAlongCurve::constant_raw(curve, std::move(raw));
    };
    Vec summed(raw1);
    for (size_t i = 0; i < summed.size(); ++i) summed[i] += raw2[i];
    TangentVector d_sum = covariant_derivative(alpha, field(summed), 0.0);
    TangentVector d_split = covariant_derivative(alpha, field(raw1), 0.0) +
                            covariant_derivative(alpha, field(raw2), 0.0);
    worst = std::max(worst, sup_diff(d_sum.components(), d_split.components()));

    Vec scaled(raw1);
    for (double& x : scaled) x *= scale;
    TangentVector d_scaled = covariant_derivative(alpha, field(scaled), 0.0);
    TangentVector d_mult = scale * covariant_derivative(alpha, field(raw1), 0.0);
    worst = std::max(worst, sup_diff(d_scaled.components(), d_mult.components()));
  }
  return {worst, samples};
}

CheckOutcome check_metric_compatibility(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 200);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 1));
    Distribution p = interior_point(ctx.n, derive_seed(seed, 0));
    worst = std::max(worst, duality_residual(Alpha::levi_civita(), p,
                                             random_raw(rng, ctx.n),
                                             random_raw(rng, ctx.n),
                                             random_raw(rng, ctx.n)));
  }
  return {worst, samples};
}

CheckOutcome check_duality_grid(const CheckContext& ctx) {
  long long configs = std::max<long long>(100, ctx.samples / 10);
  const double alphas[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  double worst = 0.0;
  for (long long s = 0; s < configs; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 1));
    Distribution p = interior_point(ctx.n, derive_seed(seed, 0));
    Vec x = random_raw(rng, ctx.n);
    Vec y = random_raw(rng, ctx.n);
    Vec z = random_raw(rng, ctx.n);
    for (double a : alphas) {
      worst = std::max(worst, duality_residual(Alpha(a), p, x, y, z));
    }
  }
  return {worst, configs * 5};
}

CheckOutcome check_geodesic_closed_forms(const CheckContext& ctx) {
  long long cases = std::clamp<long long>(ctx.samples / 250, 2, 8);
  double worst = 0.0;
  for (long long s = 0; s < cases; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 1));
    Distribution p0 = interior_point(ctx.n, derive_seed(seed, 0));
    Vec raw = random_raw(rng, ctx.n);
    for (double& x : raw) x *= 0.8;
    TangentVector v0 = center(p0, raw);

    // Exponential geodesic against p_i(t) ~ p_i(0) exp(t v_i), renormalized.
    auto traj = integrate_geodesic(Alpha::exponential(), p0, v0, 1.0, 256);
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

    // Mixture geodesic against the straight line p + t c, c_i = p_i v_i,
    // with the velocity shrunk so the path stays inside for t in [0, 1].
    Vec c(p0.weights());
    double shrink = 1.0;
    for (size_t i = 0; i < c.size(); ++i) {
      c[i] *= v0.components()[i];
      if (c[i] < 0.0) shrink = std::min(shrink, 0.8 * p0.weights()[i] / -c[i]);
    }
    for (double& x : c) x *= shrink;
    Vec scaled_u(v0.components());
    for (double& x : scaled_u) x *= shrink;
    TangentVector v0m(p0, scaled_u);
    auto traj_m = integrate_geodesic(Alpha::mixture(), p0, v0m, 1.0, 256);
    for (const GeodesicState& st : traj_m) {
      Vec expected(p0.weights());
      for (size_t i = 0; i < expected.size(); ++i) expected[i] += st.t * c[i];
      worst = std::max(worst, sup_diff(st.p.weights(), expected));
    }
  }
  return {worst, cases * 2 * 257};
}

CheckOutcome check_parallel_transport_pairing(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 50);
  const double alphas[] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 1));
    Distribution p = interior_point(ctx.n, derive_seed(seed, 0));
    Curve curve = Curve::exponential_family(p, random_raw(rng, ctx.n, 0.7));
    TangentVector v0 = random_tangent(p, derive_seed(seed, 2));
    TangentVector w0 = random_tangent(p, derive_seed(seed, 3));
    Alpha alpha(alphas[s % 5]);
    Alpha dual(-alpha.value());

    // Dual transports preserve the Fisher pairing.
    TangentVector v1 = parallel_transport(alpha, curve, v0, 1.0, 256);
    TangentVector w1 = parallel_transport(dual, curve, w0, 1.0, 256);
    worst = std::max(worst,
                     std::abs(fisher_metric(v1, w1) - fisher_metric(v0, w0)));

    // Transport forward and back along the reversed curve returns v0.
    Curve curve_copy = curve;
    Curve reversed(
        [curve_copy](double t) { return curve_copy.at(1.0 - t); },
        [curve_copy](double t) {
          return -1.0 * curve_copy.velocity(1.0 - t);
        },
        curve.t_min() + 1.0, curve.t_max() + 1.0);
    TangentVector back = parallel_transport(alpha, reversed, v1, 1.0, 256);
    worst = std::max(worst, sup_diff(back.components(), v0.components()));
  }
  return {worst, samples};
}

// ---------------------------------------------------------------------------
// Dombrowski checks

CheckOutcome check_j_squared(const CheckContext& ctx) {
  double worst = 0.0;
  for (long long s = 0; s < ctx.samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    auto [x, y] = sample_pullback_config(ctx.n, seed);
    SplitDoubleTangent jjx = split_J(split_J(x));
    Vec neg_h(x.horizontal().components());
    for (double& v : neg_h) v = -v;
    Vec neg_v(x.vertical().components());
    for (double& v : neg_v) v = -v;
    worst = std::max(worst, sup_diff(jjx.horizontal().components(), neg_h));
    worst = std::max(worst, sup_diff(jjx.vertical().components(), neg_v));
  }
  return {worst, ctx.samples};
}

CheckOutcome check_hermitian_G(const CheckContext& ctx) {
  double worst = 0.0;
  for (long long s = 0; s < ctx.samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    auto [x, y] = sample_pullback_config(ctx.n, seed);
    worst = std::max(worst, std::abs(split_metric_G(split_J(x), split_J(y)) -
                                     split_metric_G(x, y)));
  }
  return {worst, ctx.samples};
}

CheckOutcome check_fundamental_form(const CheckContext& ctx) {
  double worst = 0.0;
  for (long long s = 0; s < ctx.samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    auto [x, y] = sample_pullback_config(ctx.n, seed);
    worst = std::max(worst, std::abs(split_form_Omega(x, y) -
                                     split_metric_G(split_J(x), y)));
  }
  return {worst, ctx.samples};
}

CheckOutcome check_omega_closed(const CheckContext& ctx) {
  long long samples = std::clamp<long long>(ctx.samples, 25, 200);
  TangentBundleChart chart(ctx.n);
  // The residual is linear in each field while the truncation constant
  // grows with inverse powers of the smallest weight (floor 1/(2n)), so
  // field and fiber magnitudes shrink with n to keep the second-order
  // error visible below the tolerance. Any nonzero scale tests the same
  // identity; dimensions up to 8 use the full magnitudes.
  double ratio = std::min(1.0, 8.0 / ctx.n);
  double scale = 0.25 * ratio * std::sqrt(ratio);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 1));
    Distribution p = interior_point(ctx.n, derive_seed(seed, 0));
    TangentVector u = (0.5 * ratio) * random_tangent(p, derive_seed(seed, 2));
    Eigen::VectorXd coords = chart.to_coords(u);
    auto field = [&]() {
      Eigen::VectorXd d(chart.dim());
      for (int i = 0; i < d.size(); ++i) d(i) = rng.uniform(-scale, scale);
      return d;
    };
    worst = std::max(worst, omega_closedness_residual(chart, coords, field(),
                                                      field(), field(), 1e-4));
  }
  return {worst, samples};
}

CheckOutcome check_connector_linearity(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 200);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 1));
    Distribution p = interior_point(ctx.n, derive_seed(seed, 0));
    Curve base = Curve::exponential_family(p, random_raw(rng, ctx.n));
    Vec u1 = random_raw(rng, ctx.n);
    Vec w1 = random_raw(rng, ctx.n);
    Vec u2 = random_raw(rng, ctx.n);
    Vec w2 = random_raw(rng, ctx.n);
    auto affine = [](Vec a, Vec b) {
      return [a, b](double t) {
        Vec out(a.size());
        for (size_t i = 0; i < out.size(); ++i) out[i] = a[i] + t * b[i];
        return out;
      };
    };
    Vec u_sum(u1), w_sum(w1);
    for (size_t i = 0; i < u_sum.size(); ++i) {
      u_sum[i] += u2[i];
      w_sum[i] += w2[i];
    }
    TangentVector k_sum = connector(
        VectorFieldAlongCurve(base, affine(u_sum, w_sum)), 0.0);
    TangentVector k_split =
        connector(VectorFieldAlongCurve(base, affine(u1, w1)), 0.0) +
        connector(VectorFieldAlongCurve(base, affine(u2, w2)), 0.0);
    worst = std::max(worst, sup_diff(k_sum.components(), k_split.components()));
  }
  return {worst, samples};
}

CheckOutcome check_connector_recovers_vertical(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 200);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    auto [x, y] = sample_pullback_config(ctx.n, seed);
    VectorFieldAlongCurve gamma = phi_inverse_curve(x);
    TangentVector k = connector(gamma, 0.0);
    worst = std::max(worst, sup_diff(k.components(), x.vertical().components()));
  }
  return {worst, samples};
}

CheckOutcome check_projection_recovers_horizontal(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 200);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    auto [x, y] = sample_pullback_config(ctx.n, seed);
    VectorFieldAlongCurve gamma = phi_inverse_curve(x);
    TangentVector v_fd = gamma.curve().velocity_fd(0.0, 1e-5);
    worst = std::max(worst,
                     sup_diff(v_fd.components(), x.horizontal().components()));
  }
  return {worst, samples};
}

CheckOutcome check_representative_independence(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 200);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    auto [x, y] = sample_pullback_config(ctx.n, seed);
    ProjectiveTangent via_e =
        tau_pushforward_fd(x, 1e-4, RepresentativeCurve::kExponentialGeodesic);
    ProjectiveTangent via_m =
        tau_pushforward_fd(x, 1e-4, RepresentativeCurve::kMixtureGeodesic);
    worst = std::max(worst, sup_diff(via_e.vector(), via_m.vector()));
  }
  return {worst, samples};
}

// ---------------------------------------------------------------------------
// projective checks

CheckOutcome check_projective_norms(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 500);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    ProjectivePoint u = random_projective_point(ctx.n, derive_seed(seed, 0));
    ProjectiveTangent xi = random_projective_tangent(u, derive_seed(seed, 1));
    worst = std::max(worst, std::abs(norm(u.representative()) - 1.0));
    worst = std::max(worst,
                     std::abs(hermitian(u.representative(), xi.vector())));
    ProjectiveTangent jxi = J_FS(xi);
    worst = std::max(worst,
                     std::abs(hermitian(u.representative(), jxi.vector())));
    ProjectivePoint back = chart_backward(u, xi.vector());
    worst = std::max(worst, std::abs(norm(back.representative()) - 1.0));
  }
  return {worst, samples};
}

CheckOutcome check_chart_roundtrip(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 500);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    ProjectivePoint u = random_projective_point(ctx.n, derive_seed(seed, 0));
    ProjectiveTangent xi = random_projective_tangent(u, derive_seed(seed, 1));
    CVec round = chart_forward(u, chart_backward(u, xi.vector()));
    worst = std::max(worst, sup_diff(round, xi.vector()));
  }
  return {worst, samples};
}

CheckOutcome check_fs_nondegenerate(const CheckContext& ctx) {
  long long samples = std::min<long long>(ctx.samples, 100);
  double worst = 0.0;
  const int m = ctx.n - 1;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    ProjectivePoint u = random_projective_point(ctx.n, derive_seed(seed, 0));
    // Orthonormal complex basis of u-perp by Gram-Schmidt on projected
    // standard vectors, skipping the largest component of u.
    int skip = 0;
    for (int i = 1; i < ctx.n; ++i) {
      if (std::abs(u.representative()[static_cast<size_t>(i)]) >
          std::abs(u.representative()[static_cast<size_t>(skip)])) {
        skip = i;
      }
    }
    std::vector<CVec> basis;
    for (int j = 0; j < ctx.n && static_cast<int>(basis.size()) < m; ++j) {
      if (j == skip) continue;
      CVec e(static_cast<size_t>(ctx.n), Complex(0.0, 0.0));
      e[static_cast<size_t>(j)] = 1.0;
      Complex ip = hermitian(u.representative(), e);
      for (size_t i = 0; i < e.size(); ++i) {
        e[i] -= ip * u.representative()[i];
      }
      for (const CVec& b : basis) {
        Complex c = hermitian(b, e);
        for (size_t i = 0; i < e.size(); ++i) e[i] -= c * b[i];
      }
      double nn = norm(e);
      for (Complex& x : e) x /= nn;
      basis.push_back(std::move(e));
    }
    // Real basis {b_k, i b_k}: the metric matrix must be the identity and
    // the symplectic matrix [[0, I], [-I, 0]], hence |det| = 1.
    std::vector<CVec> real_basis;
    for (const CVec& b : basis) {
      real_basis.push_back(b);
      CVec ib(b.size());
      for (size_t i = 0; i < b.size(); ++i) ib[i] = Complex(0.0, 1.0) * b[i];
      real_basis.push_back(std::move(ib));
    }
    int dim = 2 * m;
    Eigen::MatrixXd gmat(dim, dim), omat(dim, dim);
    for (int a = 0; a < dim; ++a) {
      for (int b = 0; b < dim; ++b) {
        Complex h = hermitian(real_basis[static_cast<size_t>(a)],
                              real_basis[static_cast<size_t>(b)]);
        gmat(a, b) = h.real();
        omat(a, b) = h.imag();
      }
    }
    Eigen::MatrixXd expected_g = Eigen::MatrixXd::Identity(dim, dim);
    worst = std::max(worst, (gmat - expected_g).cwiseAbs().maxCoeff());
    worst = std::max(worst, std::abs(std::abs(omat.determinant()) - 1.0));
  }
  return {worst, samples};
}

CheckOutcome check_chart_independence(const CheckContext& ctx) {
  long long samples = std::max<long long>(200, ctx.samples / 5);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 9));
    ProjectivePoint z = random_projective_point(ctx.n, derive_seed(seed, 0));
    auto rotate = [&](double theta) {
      CVec out(z.representative());
      Complex phase = std::polar(1.0, theta);
      for (Complex& c : out) c *= phase;
      return ProjectivePoint(std::move(out));
    };
    ProjectivePoint u1 = rotate(rng.uniform(0.0, 2.0 * kPi));
    ProjectivePoint u2 = rotate(rng.uniform(0.0, 2.0 * kPi));
    ProjectiveTangent xi = random_projective_tangent(u1, derive_seed(seed, 1));
    ProjectiveTangent eta = random_projective_tangent(u1, derive_seed(seed, 2));
    FubiniStudyPairing before = fubini_study(u1, xi, eta);
    FubiniStudyPairing after = fubini_study(u2, transfer_tangent(u1, u2, xi),
                                            transfer_tangent(u1, u2, eta));
    worst = std::max(worst, std::abs(before.g - after.g));
    worst = std::max(worst, std::abs(before.omega - after.omega));
  }
  return {worst, samples};
}

// ---------------------------------------------------------------------------
// covering checks

CheckOutcome check_deck_invariance(const CheckContext& ctx) {
  const int points = 200;
  const long long kmax = 3;
  const size_t deck_dim = static_cast<size_t>(ctx.n - 1);
  // Full enumeration of the |k_i| <= 3 box up to dimension 7 (n = 8,
  // 823543 elements); beyond that a deterministic sample of the box plus
  // all generators keeps the check tractable.
  const bool exhaustive = deck_dim <= 7;
  long long grid = 1;
  if (exhaustive) {
    for (size_t i = 0; i < deck_dim; ++i) grid *= 2 * kmax + 1;
  }
  const long long sampled_k = 2000;

  auto eval = [&](const DeckElement& k, const TangentVector& x,
                  const ProjectivePoint& zx) -> double {
    bool nonzero = false;
    for (long long v : k.k) nonzero |= (v != 0);
    if (!nonzero) return 0.0;
    TangentVector moved = deck_action(k, x);
    // Covering invariance: same ray.
    double drift = std::abs(
        std::abs(hermitian(tau(moved).representative(), zx.representative())) -
        1.0);
    // Freeness: a nonzero deck element moves the representative by at
    // least 2 pi in sup norm.
    if (sup_diff(moved.components(), x.components()) < 1.0) {
      drift = std::max(drift, 1.0);
    }
    return drift;
  };

  auto point_worst = [&](int idx) -> double {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(idx));
    Distribution p = random_point(ctx.n, derive_seed(seed, 0));
    TangentVector x = random_tangent(p, derive_seed(seed, 1));
    ProjectivePoint zx = tau(x);
    double worst = 0.0;
    if (exhaustive) {
      DeckElement k{std::vector<long long>(deck_dim, -kmax)};
      while (true) {
        worst = std::max(worst, eval(k, x, zx));
        size_t i = 0;
        while (i < deck_dim) {
          if (k.k[i] < kmax) {
            ++k.k[i];
            break;
          }
          k.k[i] = -kmax;
          ++i;
        }
        if (i == deck_dim) break;
      }
    } else {
      for (size_t g = 0; g < deck_dim; ++g) {
        DeckElement k{std::vector<long long>(deck_dim, 0)};
        k.k[g] = kmax;
        worst = std::max(worst, eval(k, x, zx));
        k.k[g] = -kmax;
        worst = std::max(worst, eval(k, x, zx));
      }
      Rng rng(derive_seed(seed, 2));
      for (long long s = 0; s < sampled_k; ++s) {
        DeckElement k{std::vector<long long>(deck_dim, 0)};
        for (long long& v : k.k) {
          v = static_cast<long long>(rng.next_u64() % (2 * kmax + 1)) - kmax;
        }
        worst = std::max(worst, eval(k, x, zx));
      }
    }
    return worst;
  };
  double worst = parallel_max(points, point_worst);
  long long per_point = exhaustive
                            ? grid - 1
                            : sampled_k + 2 * static_cast<long long>(deck_dim);
  return {worst, points * per_point};
}

CheckOutcome check_local_injectivity(const CheckContext& ctx) {
  long long samples = std::clamp<long long>(ctx.samples, 100, 400);
  TangentBundleChart chart(ctx.n);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    Rng rng(derive_seed(seed, 9));
    Distribution p = interior_point(ctx.n, derive_seed(seed, 0));
    TangentVector x = random_tangent(p, derive_seed(seed, 1));
    Eigen::VectorXd coords = chart.to_coords(x);

    // Largest perturbation radius that provably keeps the p block inside
    // the open simplex: each free weight moves by at most r and the
    // dependent weight by at most sqrt(n-1) r.
    double min_free = 1.0;
    for (int i = 0; i + 1 < ctx.n; ++i) min_free = std::min(min_free, p[i]);
    double r_max = std::min(
        {0.1, 0.8 * min_free,
         0.8 * p[ctx.n - 1] / std::sqrt(static_cast<double>(ctx.n - 1))});
    r_max = std::max(r_max, 1e-3);

    // Nearest deck translate in chart coordinates sits 4 pi p_n away (the
    // all-equal deck element); it must be unreachable from the sampled ball,
    // so every perturbed point must map to a new ray.
    double nearest_wrap = 4.0 * kPi * p[ctx.n - 1];
    if (nearest_wrap <= 2.0 * r_max) {
      worst = std::max(worst, 1.0);
      continue;
    }
    Eigen::VectorXd dir(chart.dim());
    for (int i = 0; i < dir.size(); ++i) dir(i) = rng.normal();
    dir /= dir.norm();
    double radius = rng.uniform(1e-3, r_max);
    TangentVector moved = chart.to_point(coords + radius * dir);
    if (ray_equal(tau(moved), tau(x))) worst = std::max(worst, 1.0);

    // Exhaustive wrap analysis for n = 2: shifting the u-coordinate by
    // exactly 4 pi p_2 k reproduces the deck action, hence the same ray.
    if (ctx.n == 2) {
      for (long long k = -3; k <= 3; ++k) {
        if (k == 0) continue;
        Eigen::VectorXd shifted = coords;
        shifted(1) += 4.0 * kPi * p[1] * static_cast<double>(k);
        if (!ray_equal(tau(chart.to_point(shifted)), tau(x))) {
          worst = std::max(worst, 1.0);
        }
      }
    }
  }
  return {worst, samples};
}

CheckOutcome check_hermitian_pairing(const CheckContext& ctx) {
  PullbackResiduals r = verify_pullback_batch(
      ctx.n, static_cast<int>(ctx.samples), ctx.seed, PushforwardMode::kAnalytic);
  return {r.pairing, ctx.samples};
}

CheckOutcome check_orthogonality_transport(const CheckContext& ctx) {
  double worst = 0.0;
  for (long long s = 0; s < ctx.samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    auto [x, y] = sample_pullback_config(ctx.n, seed);
    ProjectiveTangent xi = tau_pushforward(x);
    worst = std::max(
        worst, std::abs(hermitian(tau(x.foot()).representative(), xi.vector())));
  }
  return {worst, ctx.samples};
}

CheckOutcome check_j_commutation(const CheckContext& ctx) {
  PullbackResiduals r = verify_pullback_batch(
      ctx.n, static_cast<int>(ctx.samples), ctx.seed, PushforwardMode::kAnalytic);
  return {r.complex_structure, ctx.samples};
}

CheckOutcome check_pullback_metric(const CheckContext& ctx) {
  PullbackResiduals r = verify_pullback_batch(
      ctx.n, static_cast<int>(ctx.samples), ctx.seed, PushforwardMode::kAnalytic);
  return {r.metric, ctx.samples};
}

CheckOutcome check_pullback_symplectic(const CheckContext& ctx) {
  PullbackResiduals r = verify_pullback_batch(
      ctx.n, static_cast<int>(ctx.samples), ctx.seed, PushforwardMode::kAnalytic);
  return {r.symplectic, ctx.samples};
}

CheckOutcome check_pushforward_fd_agreement(const CheckContext& ctx) {
  long long samples = std::max<long long>(ctx.samples / 2, 500);
  double worst = 0.0;
  for (long long s = 0; s < samples; ++s) {
    std::uint64_t seed = derive_seed(ctx.seed, static_cast<std::uint64_t>(s));
    auto [x, y] = sample_pullback_config(ctx.n, seed);
    ProjectiveTangent analytic = tau_pushforward(x);
    ProjectiveTangent fd = tau_pushforward_fd(x, 1e-4);
    worst = std::max(worst, sup_diff(analytic.vector(), fd.vector()));
  }
  return {worst, samples};
}

}  // namespace

const std::vector<Check>& check_registry() {
  static const std::vector<Check> registry = {
      {"simplex.distribution_validity", 1e-12, check_distribution_validity},
      {"simplex.fisher_positive_definite", 0.0, check_fisher_positive_definite},
      {"simplex.fisher_symmetric", 1e-14, check_fisher_symmetric},
      {"simplex.fisher_bilinear", 1e-12, check_fisher_bilinear},
      {"simplex.center_projection", 1e-14, check_center_projection},
      {"simplex.curve_fd_velocity", 1e-8, check_curve_fd_velocity},
      {"connections.alpha1_reduction", 1e-12, check_alpha1_reduction},
      {"connections.linearity", 1e-10, check_connection_linearity},
      {"connections.metric_compatibility_alpha0", 1e-6,
       check_metric_compatibility},
      {"connections.duality", 1e-6, check_duality_grid},
      {"connections.geodesic_closed_forms", 1e-6, check_geodesic_closed_forms},
      {"connections.parallel_transport_pairing", 1e-6,
       check_parallel_transport_pairing},
      {"dombrowski.J_squared", 1e-15, check_j_squared},
      {"dombrowski.hermitian_G", 1e-14, check_hermitian_G},
      {"dombrowski.fundamental_form", 1e-14, check_fundamental_form},
      {"dombrowski.omega_closed", 1e-5, check_omega_closed},
      {"dombrowski.connector_linearity", 1e-10, check_connector_linearity},
      {"dombrowski.connector_recovers_vertical", 1e-8,
       check_connector_recovers_vertical},
      {"dombrowski.projection_recovers_horizontal", 1e-8,
       check_projection_recovers_horizontal},
      {"dombrowski.representative_independence", 2e-6,
       check_representative_independence},
      {"projective.unit_norm_orthogonality", 1e-12, check_projective_norms},
      {"projective.chart_roundtrip", 1e-10, check_chart_roundtrip},
      {"projective.fs_definite_nondegenerate", 1e-10, check_fs_nondegenerate},
      {"projective.chart_independence", 1e-6, check_chart_independence},
      {"covering.deck_invariance", 1e-10, check_deck_invariance},
      {"covering.local_injectivity", 0.0, check_local_injectivity},
      {"covering.hermitian_pairing", 1e-10, check_hermitian_pairing},
      {"covering.orthogonality_transport", 1e-12,
       check_orthogonality_transport},
      {"covering.J_commutation", 1e-12, check_j_commutation},
      {"covering.pullback_metric", 1e-10, check_pullback_metric},
      {"covering.pullback_symplectic", 1e-10, check_pullback_symplectic},
      {"covering.pushforward_fd_agreement", 2e-6,
       check_pushforward_fd_agreement},
  };
  return registry;
}

const std::vector<std::string>& required_invariant_checks() {
  static const std::vector<std::string> required = {
      "simplex.distribution_validity",
      "simplex.fisher_positive_definite",
      "simplex.fisher_symmetric",
      "simplex.fisher_bilinear",
      "simplex.center_projection",
      "simplex.curve_fd_velocity",
      "connections.alpha1_reduction",
      "connections.linearity",
      "connections.metric_compatibility_alpha0",
      "connections.duality",
      "connections.geodesic_closed_forms",
      "connections.parallel_transport_pairing",
      "dombrowski.J_squared",
      "dombrowski.hermitian_G",
      "dombrowski.fundamental_form",
      "dombrowski.omega_closed",
      "dombrowski.connector_linearity",
      "dombrowski.connector_recovers_vertical",
      "dombrowski.projection_recovers_horizontal",
      "dombrowski.representative_independence",
      "projective.unit_norm_orthogonality",
      "projective.chart_roundtrip",
      "projective.fs_definite_nondegenerate",
      "projective.chart_independence",
      "covering.deck_invariance",
      "covering.local_injectivity",
      "covering.hermitian_pairing",
      "covering.orthogonality_transport",
      "covering.J_commutation",
      "covering.pullback_metric",
      "covering.pullback_symplectic",
      "covering.pushforward_fd_agreement",
  };
  return required;
}

namespace {

CheckRecord run_one(const Check& check, const CheckContext& ctx,
                    double tol_scale) {
  auto t0 = std::chrono::steady_clock::now();
  CheckOutcome outcome = check.fn(ctx);
  auto t1 = std::chrono::steady_clock::now();
  CheckRecord rec;
  rec.name = check.name;
  rec.n = ctx.n;
  rec.samples = outcome.samples;
  rec.max_abs_error = outcome.max_abs_error;
  rec.tolerance = check.tolerance * tol_scale;
  rec.pass = outcome.max_abs_error <= rec.tolerance;
  rec.seed = ctx.seed;
  rec.wall_time_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  return rec;
}

void require_registry_complete() {
  std::set<std::string> names;
  for (const Check& c : check_registry()) names.insert(c.name);
  for (const std::string& req : required_invariant_checks()) {
    if (names.find(req) == names.end()) {
      throw InvalidArgument("check registry is missing required invariant: " +
                            req);
    }
  }
}

}  // namespace

Report run_verify(const VerifyConfig& config) {
  require_registry_complete();
  if (config.samples < 1) {
    throw InvalidArgument("run_verify: samples must be >= 1");
  }
  if (config.n_list.empty()) {
    throw InvalidArgument("run_verify: n list must not be empty");
  }
  for (int n : config.n_list) {
    if (n < 2 || n > 64) {
      throw InvalidArgument("run_verify: every n must lie in [2, 64]");
    }
  }
  Report report;
  report.suite = "verify";
  report.artifact_version = kArtifactVersion;
  std::uint64_t slot = 0;
  for (const Check& check : check_registry()) {
    for (int n : config.n_list) {
      CheckContext ctx;
      ctx.n = n;
      ctx.samples = config.samples;
      ctx.seed = derive_seed(config.seed, slot++);
      report.records.push_back(run_one(check, ctx, config.tol_scale));
    }
  }
  report.overall_pass = true;
  for (const CheckRecord& rec : report.records) {
    report.overall_pass = report.overall_pass && rec.pass;
  }
  return report;
}

Report run_pullback_suite(int n, long long samples, std::uint64_t seed,
                          PushforwardMode mode, double tol_scale) {
  if (n < 2) throw InvalidArgument("run_pullback_suite: n must be >= 2");
  if (samples < 1) throw InvalidArgument("run_pullback_suite: samples >= 1");
  bool analytic = mode == PushforwardMode::kAnalytic;
  Report report;
  report.suite = "pullback";
  report.artifact_version = kArtifactVersion;

  auto timed = [&](const std::string& name, double tol,
                   const std::function<double(const PullbackResiduals&)>& pick) {
    auto t0 = std::chrono::steady_clock::now();
    PullbackResiduals r =
        verify_pullback_batch(n, static_cast<int>(samples), seed, mode);
    auto t1 = std::chrono::steady_clock::now();
    CheckRecord rec;
    rec.name = name;
    rec.n = n;
    rec.samples = samples;
    rec.max_abs_error = pick(r);
    rec.tolerance = tol * tol_scale;
    rec.pass = rec.max_abs_error <= rec.tolerance;
    rec.seed = seed;
    rec.wall_time_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.records.push_back(rec);
  };
  timed("pullback.metric", analytic ? 1e-10 : 2e-6,
        [](const PullbackResiduals& r) { return r.metric; });
  timed("pullback.symplectic", analytic ? 1e-10 : 2e-6,
        [](const PullbackResiduals& r) { return r.symplectic; });
  timed("pullback.complex_structure", analytic ? 1e-12 : 2e-6,
        [](const PullbackResiduals& r) { return r.complex_structure; });

  report.overall_pass = true;
  for (const CheckRecord& rec : report.records) {
    report.overall_pass = report.overall_pass && rec.pass;
  }
  return report;
}

Json report_to_json(const Report& report) {
  Json j;
  j["suite"] = report.suite;
  j["artifact_version"] = report.artifact_version;
  Json records = Json::array();
  for (const CheckRecord& rec : report.records) {
    Json r;
    r["name"] = rec.name;
    r["n"] = rec.n;
    r["samples"] = rec.samples;
    r["max_abs_error"] = rec.max_abs_error;
    r["tolerance"] = rec.tolerance;
    r["pass"] = rec.pass;
    r["seed"] = rec.seed;
    r["wall_time_ms"] = rec.wall_time_ms;
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  j["overall_pass"] = report.overall_pass;
  return j;
}

void write_report(const Report& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << report_to_json(report).dump(2) << '\n';
  if (!out.good()) throw IoError("failed while writing " + path);
}

}  // namespace infogeo

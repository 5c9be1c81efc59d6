#include "infogeo/covering.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "infogeo/rng.hpp"

namespace infogeo {

namespace {

constexpr double kFourPi = 4.0 * 3.14159265358979323846264338327950288;

}  // namespace

ProjectivePoint tau(const TangentVector& x) {
  const Vec& p = x.base().weights();
  const Vec& u = x.components();
  CVec z(p.size());
  for (size_t i = 0; i < p.size(); ++i) {
    z[i] = std::polar(std::sqrt(p[i]), 0.5 * u[i]);
  }
  return ProjectivePoint(std::move(z));
}

TangentVector deck_action(const DeckElement& k, const TangentVector& x) {
  size_t n = x.components().size();
  if (k.k.size() != n - 1) {
    throw DimensionMismatch("deck_action: k must have length n - 1");
  }
  Vec shifted = x.components();
  for (size_t i = 0; i + 1 < n; ++i) {
    shifted[i] += kFourPi * static_cast<double>(k.k[i]);
  }
  return center(x.base(), shifted);
}

ProjectiveTangent tau_pushforward(const SplitDoubleTangent& x) {
  const Vec& p = x.base().weights();
  const Vec& u = x.foot().components();
  const Vec& v = x.horizontal().components();
  const Vec& w = x.vertical().components();
  CVec xi(p.size());
  for (size_t j = 0; j < p.size(); ++j) {
    Complex phase = std::polar(0.5 * std::sqrt(p[j]), 0.5 * u[j]);
    xi[j] = phase * Complex(v[j], w[j]);
  }
  return ProjectiveTangent(tau(x.foot()), std::move(xi));
}

ProjectiveTangent tau_pushforward_fd(const SplitDoubleTangent& x, double h,
                                     RepresentativeCurve kind) {
  VectorFieldAlongCurve gamma = phi_inverse_curve(x, kind);
  ProjectivePoint z = tau(x.foot());
  auto mapped = [&](double t) { return chart_forward(z, tau(gamma.at(t))); };
  CVec plus = mapped(h);
  CVec minus = mapped(-h);
  CVec out(plus.size());
  for (size_t i = 0; i < out.size(); ++i) {
    out[i] = (plus[i] - minus[i]) / (2.0 * h);
  }
  // Strip the finite-difference residue along z; the analytic image lies in
  // z-perp exactly.
  Complex ip = hermitian(z.representative(), out);
  for (size_t i = 0; i < out.size(); ++i) out[i] -= ip * z.representative()[i];
  return ProjectiveTangent(std::move(z), std::move(out));
}

void PullbackResiduals::max_with(const PullbackResiduals& other) {
  metric = std::max(metric, other.metric);
  symplectic = std::max(symplectic, other.symplectic);
  pairing = std::max(pairing, other.pairing);
  complex_structure = std::max(complex_structure, other.complex_structure);
}

PullbackResiduals verify_pullback(const SplitDoubleTangent& x,
                                  const SplitDoubleTangent& y,
                                  PushforwardMode mode, double fd_step) {
  double big_g = split_metric_G(x, y);
  double omega = split_form_Omega(x, y);
  auto push = [&](const SplitDoubleTangent& s) {
    return mode == PushforwardMode::kAnalytic
               ? tau_pushforward(s)
               : tau_pushforward_fd(s, fd_step);
  };
  ProjectiveTangent xi = push(x);
  ProjectiveTangent eta = push(y);
  ProjectivePoint z = tau(x.foot());
  FubiniStudyPairing fs = fubini_study(z, xi, eta);
  Complex pair = hermitian(xi.vector(), eta.vector());

  PullbackResiduals r;
  r.metric = std::abs(fs.g - big_g);
  r.symplectic = std::abs(fs.omega - omega);
  r.pairing = std::abs(pair - Complex(big_g, omega));

  ProjectiveTangent jx_push = push(split_J(x));
  const Complex i_unit(0.0, 1.0);
  double worst = 0.0;
  for (size_t j = 0; j < xi.vector().size(); ++j) {
    worst = std::max(worst,
                     std::abs(jx_push.vector()[j] - i_unit * xi.vector()[j]));
  }
  r.complex_structure = worst;
  return r;
}

std::pair<SplitDoubleTangent, SplitDoubleTangent> sample_pullback_config(
    int n, std::uint64_t seed) {
  Distribution p = random_point(n, derive_seed(seed, 0));
  TangentVector u = random_tangent(p, derive_seed(seed, 1));
  TangentVector v = random_tangent(p, derive_seed(seed, 2));
  TangentVector w = random_tangent(p, derive_seed(seed, 3));
  TangentVector v2 = random_tangent(p, derive_seed(seed, 4));
  TangentVector w2 = random_tangent(p, derive_seed(seed, 5));
  return {SplitDoubleTangent(u, v, w), SplitDoubleTangent(u, v2, w2)};
}

PullbackResiduals verify_pullback_batch(int n, int samples, std::uint64_t seed,
                                        PushforwardMode mode, double fd_step) {
  if (samples < 1) throw InvalidArgument("verify_pullback_batch: samples >= 1");
  PullbackResiduals worst;
  for (int s = 0; s < samples; ++s) {
    auto [x, y] =
        sample_pullback_config(n, derive_seed(seed, static_cast<std::uint64_t>(s)));
    worst.max_with(verify_pullback(x, y, mode, fd_step));
  }
  return worst;
}

}  // namespace infogeo

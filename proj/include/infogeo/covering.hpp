#pragma once

// The covering of the punctured projective space by the tangent bundle of
// the simplex: the map tau, its Z^{n-1} deck action, its analytic
// pushforward in chart coordinates, and the pullback verification that ties
// the split structure (G, Omega, J) to the Fubini-Study structure.

#include <cstdint>
#include <vector>

#include "infogeo/dombrowski.hpp"
#include "infogeo/projective.hpp"
#include "infogeo/simplex.hpp"

namespace infogeo {

/// An element of the deck group Z^{n-1}.
struct DeckElement {
  std::vector<long long> k;
};

/// tau([u]_p) = [ sqrt(p_1) e^{i u_1 / 2}, ..., sqrt(p_n) e^{i u_n / 2} ].
/// The representative is exactly this vector (unit norm since the weights
/// sum to one); every component has modulus sqrt(p_i) > 0, so the image has
/// no vanishing coordinate.
ProjectivePoint tau(const TangentVector& x);

/// Deck action: shift the first n-1 components of u by 4 pi k_i, then
/// recenter at p. Recentering restores the zero-expectation invariant and
/// shifts tau's output only by a global phase, so tau(deck(k, x)) and
/// tau(x) are the same projective point.
TangentVector deck_action(const DeckElement& k, const TangentVector& x);

/// Analytic pushforward of tau in the chart centered at z = tau([u]_p):
///   xi_j = 1/2 sqrt(p_j) e^{i u_j / 2} (v_j + i w_j).
/// Orthogonality <z, xi> = 0 encodes E_p(v) = E_p(w) = 0 and is not
/// re-imposed numerically.
ProjectiveTangent tau_pushforward(const SplitDoubleTangent& x);

/// Central-difference pushforward of phi_z o tau along the representative
/// curve realizing x. Independent cross-check of the analytic formula.
ProjectiveTangent tau_pushforward_fd(
    const SplitDoubleTangent& x, double h = 1e-4,
    RepresentativeCurve kind = RepresentativeCurve::kExponentialGeodesic);

enum class PushforwardMode { kAnalytic, kFiniteDifference };

/// Residuals of the pullback identities for one pair of double tangents:
///   metric:            | Re<tau_* x, tau_* y> - G(x, y) |
///   symplectic:        | Im<tau_* x, tau_* y> - Omega(x, y) |
///   pairing:           | <tau_* x, tau_* y> - (G + i Omega) |
///   complex_structure: max_j | (tau_*(J x))_j - i (tau_* x)_j |
struct PullbackResiduals {
  double metric = 0.0;
  double symplectic = 0.0;
  double pairing = 0.0;
  double complex_structure = 0.0;

  void max_with(const PullbackResiduals& other);
};

/// Explicit-input verification; x and y must share base and foot.
PullbackResiduals verify_pullback(
    const SplitDoubleTangent& x, const SplitDoubleTangent& y,
    PushforwardMode mode = PushforwardMode::kAnalytic, double fd_step = 1e-4);

/// One random configuration (p, u, v, w) and a partner sharing (p, u).
std::pair<SplitDoubleTangent, SplitDoubleTangent> sample_pullback_config(
    int n, std::uint64_t seed);

/// Max residuals over a seeded batch of random configurations.
PullbackResiduals verify_pullback_batch(int n, int samples, std::uint64_t seed,
                                        PushforwardMode mode = PushforwardMode::kAnalytic,
                                        double fd_step = 1e-4);

}  // namespace infogeo

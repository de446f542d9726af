#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>

#include "zitau/sample.hpp"
#include "zitau/zip.hpp"

namespace zitau {

enum class BoundKind { denuit_tauH, exact_tauA, estimated_tauA };

enum class FhBound { upper, lower };

// An attainable range for the association of a zero-inflated pair, together
// with the ingredients that produced it. s_tilde / t_tilde are the points
// where the x / y margin cdf first exceeds the larger zero probability (upper
// bound); the primed versions are the analogous crossing points of 1 - p for
// the lower bound. pU_t11 / pL_t11 are the probabilities that two independent
// both-positive pairs tie in either coordinate under the extreme joints (the
// estimated kind substitutes the same max tie frequency for both).
struct BoundsReport {
    double lower = 0;
    double upper = 0;
    BoundKind kind = BoundKind::exact_tauA;
    std::optional<long long> s_tilde, t_tilde, s_tilde_prime, t_tilde_prime;
    std::optional<double> pU_t11, pL_t11;
    bool denuit_fallback = false; // estimated kind fell back to the zero-probability-only bounds
};

using DiscreteCdf = std::function<double(long long)>;

// Bounds that depend on the zero probabilities alone:
//   upper = 1 - max(p1,p2)^2
//   lower = -2(1-p1)(1-p2)              when 1 - p1 - p2 < 0
//           (1-p1-p2)^2 - 2(1-p1)(1-p2) otherwise (both branches agree at 0).
BoundsReport denuit_bounds(double p1, double p2);

// min{s >= 0 : F(s) > p}; then F(s-1) <= p automatically. Requires p < 1.
long long find_threshold_upper(const DiscreteCdf& F, double p);
// min{s >= 0 : F(s) > 1 - p}. Requires p > 0.
long long find_threshold_lower(const DiscreteCdf& F, double p);

// pmf over the positive integers; probs(i) holds P(value = i + 1). empty
// marks a conditioning group of probability zero (no distribution exists).
struct PositivePmf {
    Eigen::ArrayXd probs;
    bool empty = false;
};

// The four conditional distributions (x | x>0, y=0), (x | both>0),
// (y | y>0, x=0), (y | both>0) under the chosen extreme joint cdf, in closed
// form. For the lower bound p1 + p2 <= 1 is required (the other case has an
// empty both-positive region). Under the upper bound with equal zero
// probabilities the (x>0, y=0) group is empty and marked as such.
struct BoundConditionals {
    PositivePmf x10, x11, y01, y11;
};
BoundConditionals bound_cond_dists(const ZipMargin& fx, const ZipMargin& fy, FhBound which);

// P(A > B) and P(A = B) for independent draws from two positive pmfs on the
// same value ladder; 0 if either is empty.
double prob_greater(const PositivePmf& a, const PositivePmf& b);
double prob_equal(const PositivePmf& a, const PositivePmf& b);

// P(X = X' or Y = Y') for two independent copies of the both-positive
// conditioned pair under the chosen extreme joint:
//   sum_x qx(x)^2 + sum_y qy(y)^2 - sum_{x,y} q(x,y)^2
// with q the conditioned joint pmf. degenerate_error when the both-positive
// mass is at or below tail_tol.
double tie_prob_under_bound(const ZipMargin& fx, const ZipMargin& fy,
                            FhBound which, double tail_tol);

// Sharp attainable range for the adjusted association measure with known
// margins. Upper bound (p1 <= p2; swap roles otherwise):
//   (1 - p2^2) - (1-p2)^2 pU - 2 (p2 - F(s~ - 1)) (F(s~) - p2)
// Lower bound: -2(1-p1)(1-p2) when 1 - p1 - p2 < 0, otherwise
//   p1^2 + p2^2 - 1 + (1-p1-p2)^2 pL
//     + 2 [ (F(s~') + p2 - 1)(1 - p2 - F(s~' - 1))
//         + (G(t~') + p1 - 1)(1 - p1 - G(t~' - 1)) ]
BoundsReport exact_tauA_bounds(const ZipMargin& fx, const ZipMargin& fy, double tail_tol);

// Nonparametric plug-in of the same formulas: empirical cdfs, zero
// frequencies, and max(tie frequency of positive x, tie frequency of
// positive y) substituted for both pU and pL. Tie frequencies are pair
// frequencies over the whole sample, sum n_v (n_v - 1) / (n (n - 1)) across
// positive value groups. Falls back (flagged) to denuit_bounds when no row
// has both coordinates positive.
BoundsReport estimate_bounds(const PairedSample& s);

} // namespace zitau

#pragma once

#include <vector>

#include "zitau/sample.hpp"

namespace zitau {

// Sample frequencies of the four zero/positive patterns of a pair, plus the
// conditional sub-samples the adjusted estimator needs. Naming: p10 is the
// frequency of (x > 0, y = 0), p01 of (x = 0, y > 0).
struct ZeroPatternStats {
    long long n = 0;
    double p00 = 0, p01 = 0, p10 = 0, p11 = 0;
    std::vector<long long> x_pos_y_zero;  // x values with x > 0, y = 0
    std::vector<long long> x_pos_y_pos_x; // x values with x > 0, y > 0
    std::vector<long long> y_pos_x_zero;  // y values with y > 0, x = 0
    std::vector<long long> y_pos_x_pos_y; // y values with x > 0, y > 0
    PairedSample pos_pos_pairs;           // rows with both coordinates > 0
};

// Cross-group comparison fractions between the one-sided and the both-positive
// conditionals: p1_star is the fraction of (a, b) in
// x_pos_y_zero x x_pos_y_pos_x with a > b, p1_dagger the fraction with a = b;
// p2_* the same for the y groups. An empty factor group makes both 0.
struct CrossGroupStats {
    double p1_star = 0, p1_dagger = 0;
    double p2_star = 0, p2_dagger = 0;
};

// Pair-count summary of a sample: C - D over all unordered pairs, the total
// n(n-1)/2, and the number of pairs tied in each coordinate.
struct KendallCounts {
    long long concordant_minus_discordant = 0;
    long long total_pairs = 0;
    long long tied_x = 0;
    long long tied_y = 0;
};

struct EstimateReport {
    double tau_hat = 0;    // (C - D) / (n(n-1)/2)
    double tau_b = 0;      // tie-corrected, full sample; NaN when degenerate
    double tau_11_hat = 0; // tie-corrected on pos_pos_pairs, 0 on fallback
    double tau_H_hat = 0;  // quadrant decomposition without margin-tie terms
    double tau_A_hat = 0;  // quadrant decomposition with margin-tie terms
    ZeroPatternStats stats;
    CrossGroupStats cross;
    bool tau_b_degenerate = false;
    bool tau11_fallback = false;
};

ZeroPatternStats zero_pattern_stats(const PairedSample& s);

// O(n log n): sort by (x, y), count tie groups, and count discordant pairs as
// merge-sort inversions of the y sequence.
KendallCounts kendall_counts(const PairedSample& s);

double tau_standard(const PairedSample& s); // needs n >= 2
double tau_b(const PairedSample& s);        // degenerate_error if a margin is fully tied

CrossGroupStats cross_group_stats(const ZeroPatternStats& z);

// Kendall's tau of a zero-inflated pair decomposed over the four zero/positive
// quadrants. tau11 is the dependence within the both-positive quadrant. The
// unadjusted form ignores ties between the one-sided and both-positive
// conditionals; the adjusted form subtracts the tie fractions as well:
//   p11^2 tau11 + 2 (p00 p11 - p01 p10)
//     + 2 p11 [ p10 (1 - 2 p1_star [- p1_dagger])
//             + p01 (1 - 2 p2_star [- p2_dagger]) ]
// Both are plain algebra over the inputs and never throw; the adjusted form
// stays in [-1,1] for frequencies coming from a sample, the unadjusted one
// need not.
double tau_unadjusted(double p00, double p01, double p10, double p11,
                      const CrossGroupStats& cross, double tau11);
double tau_adjusted(double p00, double p01, double p10, double p11,
                    const CrossGroupStats& cross, double tau11);

double tau_H_hat(const ZeroPatternStats& z, const CrossGroupStats& cross, double tau11);
double tau_A_hat(const ZeroPatternStats& z, const CrossGroupStats& cross, double tau11);

// Assembles everything. tau_11_hat falls back to 0 (flagged) when the
// both-positive sub-sample has fewer than 2 rows or a fully tied coordinate.
EstimateReport estimate(const PairedSample& s);

} // namespace zitau

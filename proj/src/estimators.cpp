#include "zitau/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "zitau/errors.hpp"

namespace zitau {

ZeroPatternStats zero_pattern_stats(const PairedSample& s) {
    const long long n = s.size();
    if (n < 1) throw std::invalid_argument("zero_pattern_stats: empty sample");
    ZeroPatternStats z;
    z.n = n;
    long long c00 = 0, c01 = 0, c10 = 0, c11 = 0;
    for (const auto& [x, y] : s.pairs) {
        if (x < 0 || y < 0)
            throw std::invalid_argument("zero_pattern_stats: negative count in sample");
        if (x == 0 && y == 0) {
            ++c00;
        } else if (x == 0) {
            ++c01;
            z.y_pos_x_zero.push_back(y);
        } else if (y == 0) {
            ++c10;
            z.x_pos_y_zero.push_back(x);
        } else {
            ++c11;
            z.x_pos_y_pos_x.push_back(x);
            z.y_pos_x_pos_y.push_back(y);
            z.pos_pos_pairs.pairs.emplace_back(x, y);
        }
    }
    const double dn = static_cast<double>(n);
    z.p00 = static_cast<double>(c00) / dn;
    z.p01 = static_cast<double>(c01) / dn;
    z.p10 = static_cast<double>(c10) / dn;
    z.p11 = static_cast<double>(c11) / dn;
    return z;
}

namespace {

// Strict inversions (a[i] > a[j] for i < j) by bottom-up merge sort.
long long count_inversions(std::vector<long long>& a) {
    const std::size_t n = a.size();
    std::vector<long long> buf(n);
    long long inversions = 0;
    for (std::size_t width = 1; width < n; width *= 2) {
        for (std::size_t lo = 0; lo + width < n; lo += 2 * width) {
            const std::size_t mid = lo + width;
            const std::size_t hi = std::min(lo + 2 * width, n);
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (a[j] < a[i]) {
                    inversions += static_cast<long long>(mid - i);
                    buf[k++] = a[j++];
                } else {
                    buf[k++] = a[i++];
                }
            }
            while (i < mid) buf[k++] = a[i++];
            while (j < hi) buf[k++] = a[j++];
            std::copy(buf.begin() + static_cast<std::ptrdiff_t>(lo),
                      buf.begin() + static_cast<std::ptrdiff_t>(hi),
                      a.begin() + static_cast<std::ptrdiff_t>(lo));
        }
    }
    return inversions;
}

template <class Iter, class Eq>
long long tie_pair_count(Iter first, Iter last, Eq eq) {
    long long pairs = 0;
    auto run = first;
    for (auto it = first; it != last; ++it) {
        if (!eq(*run, *it)) run = it;
        pairs += it - run; // current element ties with every earlier one in its run
    }
    return pairs;
}

} // namespace

KendallCounts kendall_counts(const PairedSample& s) {
    const long long n = s.size();
    if (n < 2) throw std::invalid_argument("kendall_counts: need at least 2 observations");

    std::vector<std::pair<long long, long long>> v = s.pairs;
    std::sort(v.begin(), v.end());

    const long long tied_x = tie_pair_count(v.begin(), v.end(),
        [](const auto& a, const auto& b) { return a.first == b.first; });
    const long long tied_xy = tie_pair_count(v.begin(), v.end(),
        [](const auto& a, const auto& b) { return a == b; });

    std::vector<long long> ys(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) ys[i] = v[i].second;
    // Sorting by (x, y) puts x-ties in y order, so inversions of the y
    // sequence are exactly the strictly discordant pairs.
    const long long discordant = count_inversions(ys); // ys ends up sorted
    const long long tied_y = tie_pair_count(ys.begin(), ys.end(),
        [](long long a, long long b) { return a == b; });

    const long long total = n * (n - 1) / 2;
    const long long untied_both = total - tied_x - tied_y + tied_xy;

    KendallCounts k;
    k.concordant_minus_discordant = untied_both - 2 * discordant;
    k.total_pairs = total;
    k.tied_x = tied_x;
    k.tied_y = tied_y;
    return k;
}

double tau_standard(const PairedSample& s) {
    const KendallCounts k = kendall_counts(s);
    return static_cast<double>(k.concordant_minus_discordant)
         / static_cast<double>(k.total_pairs);
}

double tau_b(const PairedSample& s) {
    const KendallCounts k = kendall_counts(s);
    const double denom = std::sqrt(static_cast<double>(k.total_pairs - k.tied_x)
                                 * static_cast<double>(k.total_pairs - k.tied_y));
    if (denom == 0.0)
        throw degenerate_error("tau_b: a coordinate is fully tied");
    return static_cast<double>(k.concordant_minus_discordant) / denom;
}

namespace {

// P(A > B) and P(A = B) over the product of two value groups, by sorting one
// side and binary-searching each element of the other. Empty group -> (0,0).
std::pair<double, double> cross_fractions(const std::vector<long long>& a,
                                          std::vector<long long> b) {
    if (a.empty() || b.empty()) return {0.0, 0.0};
    std::sort(b.begin(), b.end());
    long long greater = 0, equal = 0;
    for (const long long v : a) {
        const auto lo = std::lower_bound(b.begin(), b.end(), v);
        const auto hi = std::upper_bound(lo, b.end(), v);
        greater += lo - b.begin();
        equal += hi - lo;
    }
    const double total = static_cast<double>(a.size()) * static_cast<double>(b.size());
    return {static_cast<double>(greater) / total, static_cast<double>(equal) / total};
}

} // namespace

CrossGroupStats cross_group_stats(const ZeroPatternStats& z) {
    CrossGroupStats c;
    const auto [p1s, p1d] = cross_fractions(z.x_pos_y_zero, z.x_pos_y_pos_x);
    const auto [p2s, p2d] = cross_fractions(z.y_pos_x_zero, z.y_pos_x_pos_y);
    c.p1_star = p1s;
    c.p1_dagger = p1d;
    c.p2_star = p2s;
    c.p2_dagger = p2d;
    return c;
}

double tau_unadjusted(double p00, double p01, double p10, double p11,
                      const CrossGroupStats& cross, double tau11) {
    return p11 * p11 * tau11
         + 2.0 * (p00 * p11 - p01 * p10)
         + 2.0 * p11 * (p10 * (1.0 - 2.0 * cross.p1_star)
                      + p01 * (1.0 - 2.0 * cross.p2_star));
}

double tau_adjusted(double p00, double p01, double p10, double p11,
                    const CrossGroupStats& cross, double tau11) {
    return p11 * p11 * tau11
         + 2.0 * (p00 * p11 - p01 * p10)
         + 2.0 * p11 * (p10 * (1.0 - 2.0 * cross.p1_star - cross.p1_dagger)
                      + p01 * (1.0 - 2.0 * cross.p2_star - cross.p2_dagger));
}

double tau_H_hat(const ZeroPatternStats& z, const CrossGroupStats& cross, double tau11) {
    return tau_unadjusted(z.p00, z.p01, z.p10, z.p11, cross, tau11);
}

double tau_A_hat(const ZeroPatternStats& z, const CrossGroupStats& cross, double tau11) {
    return tau_adjusted(z.p00, z.p01, z.p10, z.p11, cross, tau11);
}

EstimateReport estimate(const PairedSample& s) {
    if (s.size() < 2) throw std::invalid_argument("estimate: need at least 2 observations");

    EstimateReport r;
    r.stats = zero_pattern_stats(s);
    r.cross = cross_group_stats(r.stats);
    r.tau_hat = tau_standard(s);

    try {
        r.tau_b = tau_b(s);
    } catch (const degenerate_error&) {
        r.tau_b = std::numeric_limits<double>::quiet_NaN();
        r.tau_b_degenerate = true;
    }

    r.tau_11_hat = 0.0;
    r.tau11_fallback = true;
    if (r.stats.pos_pos_pairs.size() >= 2) {
        try {
            r.tau_11_hat = tau_b(r.stats.pos_pos_pairs);
            r.tau11_fallback = false;
        } catch (const degenerate_error&) {
            // keep the 0 fallback; p11^2 is negligible exactly when this happens
        }
    }

    r.tau_H_hat = tau_H_hat(r.stats, r.cross, r.tau_11_hat);
    r.tau_A_hat = tau_A_hat(r.stats, r.cross, r.tau_11_hat);
    return r;
}

} // namespace zitau

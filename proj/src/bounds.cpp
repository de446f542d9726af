#include "zitau/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "zitau/errors.hpp"
#include "zitau/grid.hpp"

namespace zitau {

BoundsReport denuit_bounds(double p1, double p2) {
    if (!(p1 >= 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0))
        throw std::domain_error("denuit_bounds: zero probabilities must lie in [0,1]");
    BoundsReport r;
    r.kind = BoundKind::denuit_tauH;
    r.upper = 1.0 - std::max(p1, p2) * std::max(p1, p2);
    const double rest = 1.0 - p1 - p2;
    r.lower = rest < 0.0 ? -2.0 * (1.0 - p1) * (1.0 - p2)
                         : rest * rest - 2.0 * (1.0 - p1) * (1.0 - p2);
    return r;
}

long long find_threshold_upper(const DiscreteCdf& F, double p) {
    if (!(p < 1.0))
        throw std::domain_error("find_threshold_upper: p must be below 1");
    long long s = 0;
    while (!(F(s) > p)) ++s;
    return s;
}

long long find_threshold_lower(const DiscreteCdf& F, double p) {
    if (!(p > 0.0))
        throw std::domain_error("find_threshold_lower: p must be above 0");
    long long s = 0;
    while (!(F(s) > 1.0 - p)) ++s;
    return s;
}

namespace {

PositivePmf empty_pmf() {
    PositivePmf d;
    d.probs = Eigen::ArrayXd::Zero(0);
    d.empty = true;
    return d;
}

struct MarginView {
    std::vector<double> cdf; // cdf(0..)
    double at(long long s) const {
        if (s < 0) return 0.0;
        if (s >= static_cast<long long>(cdf.size())) return cdf.back();
        return cdf[static_cast<std::size_t>(s)];
    }
};

// pmf of (value | value in (lo_excl, hi_incl] region of the margin's uniform
// scale), i.e. the margin conditioned on its cdf landing in (lo, hi]. Closed
// form for the extreme joints: the region is an interval of the latent
// uniform. length = hi - lo is the group mass.
PositivePmf interval_conditional(const MarginView& F, double lo, double hi, long long support) {
    if (!(hi - lo > 0.0)) return empty_pmf();
    PositivePmf d;
    d.probs = Eigen::ArrayXd::Zero(support);
    for (long long v = 1; v <= support; ++v) {
        const double a = std::max(F.at(v - 1), lo);
        const double b = std::min(F.at(v), hi);
        if (b > a) d.probs(v - 1) = (b - a) / (hi - lo);
    }
    return d;
}

} // namespace

BoundConditionals bound_cond_dists(const ZipMargin& fx, const ZipMargin& fy, FhBound which) {
    validate(fx);
    validate(fy);
    const double p1 = zero_probability(fx);
    const double p2 = zero_probability(fy);

    if (which == FhBound::upper && p1 > p2) {
        // Swap the roles of the margins and map the conditionals back.
        const BoundConditionals swapped = bound_cond_dists(fy, fx, which);
        BoundConditionals out;
        out.x10 = swapped.y01;
        out.x11 = swapped.y11;
        out.y01 = swapped.x10;
        out.y11 = swapped.x11;
        return out;
    }

    MarginView F{zip_cdf_table(fx)};
    MarginView G{zip_cdf_table(fy)};
    const long long support =
        std::max(truncation_point(fx, 1e-15), truncation_point(fy, 1e-15)) + 1;

    BoundConditionals out;
    if (which == FhBound::upper) {
        // Comonotone: X = F^-1(U), Y = G^-1(U). With p1 <= p2 the latent
        // regions are: both zero U <= p1, x positive & y zero (p1, p2],
        // both positive (p2, 1]. The region (p1, p2] caps X at the point
        // where F first exceeds p2.
        out.x10 = interval_conditional(F, p1, p2, support);
        out.x11 = interval_conditional(F, p2, 1.0, support);
        out.y01 = empty_pmf(); // x = 0, y > 0 would need U <= p1 and U > p2
        out.y11 = interval_conditional(G, p2, 1.0, support);
    } else {
        if (p1 + p2 > 1.0)
            throw std::domain_error(
                "bound_cond_dists: lower-bound conditionals require p1 + p2 <= 1");
        // Countermonotone: X = F^-1(U), Y = G^-1(1-U). Regions of U:
        // x zero [0, p1], both positive (p1, 1-p2), y zero [1-p2, 1].
        out.x10 = interval_conditional(F, 1.0 - p2, 1.0, support);
        out.x11 = interval_conditional(F, p1, 1.0 - p2, support);
        out.y01 = interval_conditional(G, 1.0 - p1, 1.0, support);
        out.y11 = interval_conditional(G, p2, 1.0 - p1, support);
    }
    return out;
}

double prob_greater(const PositivePmf& a, const PositivePmf& b) {
    if (a.empty || b.empty) return 0.0;
    double greater = 0.0, b_below = 0.0;
    for (Eigen::Index i = 0; i < a.probs.size(); ++i) {
        greater += a.probs(i) * b_below;
        if (i < b.probs.size()) b_below += b.probs(i);
    }
    return greater;
}

double prob_equal(const PositivePmf& a, const PositivePmf& b) {
    if (a.empty || b.empty) return 0.0;
    const Eigen::Index n = std::min(a.probs.size(), b.probs.size());
    return (a.probs.head(n) * b.probs.head(n)).sum();
}

double tie_prob_under_bound(const ZipMargin& fx, const ZipMargin& fy,
                            FhBound which, double tail_tol) {
    const JointCdf H = which == FhBound::upper ? comonotone_joint_cdf(fx, fy)
                                               : countermonotone_joint_cdf(fx, fy);
    const JointPmfGrid g = joint_pmf_grid(fx, fy, H, tail_tol);
    const Eigen::Index m = g.probs.rows();
    Eigen::ArrayXXd q = g.probs.bottomRightCorner(m - 1, m - 1);
    const double mass = q.sum();
    if (mass <= tail_tol)
        throw degenerate_error("tie_prob_under_bound: no mass with both coordinates positive");
    q /= mass;
    const Eigen::ArrayXd qx = q.rowwise().sum();
    const Eigen::ArrayXd qy = q.colwise().sum().transpose();
    return (qx * qx).sum() + (qy * qy).sum() - (q * q).sum();
}

BoundsReport exact_tauA_bounds(const ZipMargin& fx, const ZipMargin& fy, double tail_tol) {
    validate(fx);
    validate(fy);
    const double p1 = zero_probability(fx);
    const double p2 = zero_probability(fy);
    const DiscreteCdf F = [fx](long long s) { return zip_cdf(fx, s); };
    const DiscreteCdf G = [fy](long long s) { return zip_cdf(fy, s); };

    BoundsReport r;
    r.kind = BoundKind::exact_tauA;

    const double pU = tie_prob_under_bound(fx, fy, FhBound::upper, tail_tol);
    r.pU_t11 = pU;
    if (p1 <= p2) {
        const long long st = find_threshold_upper(F, p2);
        r.s_tilde = st;
        r.upper = (1.0 - p2 * p2) - (1.0 - p2) * (1.0 - p2) * pU
                - 2.0 * (p2 - F(st - 1)) * (F(st) - p2);
    } else {
        const long long tt = find_threshold_upper(G, p1);
        r.t_tilde = tt;
        r.upper = (1.0 - p1 * p1) - (1.0 - p1) * (1.0 - p1) * pU
                - 2.0 * (p1 - G(tt - 1)) * (G(tt) - p1);
    }

    const double rest = 1.0 - p1 - p2;
    if (rest < 0.0) {
        r.lower = -2.0 * (1.0 - p1) * (1.0 - p2);
    } else {
        const double pL =
            rest > 0.0 ? tie_prob_under_bound(fx, fy, FhBound::lower, tail_tol) : 0.0;
        r.pL_t11 = pL;
        const long long sp = find_threshold_lower(F, p2);
        const long long tp = find_threshold_lower(G, p1);
        r.s_tilde_prime = sp;
        r.t_tilde_prime = tp;
        r.lower = (p1 * p1 + p2 * p2 - 1.0) + rest * rest * pL
                + 2.0 * ((F(sp) + p2 - 1.0) * (1.0 - p2 - F(sp - 1))
                       + (G(tp) + p1 - 1.0) * (1.0 - p1 - G(tp - 1)));
    }
    return r;
}

BoundsReport estimate_bounds(const PairedSample& s) {
    const long long n = s.size();
    if (n < 2) throw std::invalid_argument("estimate_bounds: need at least 2 observations");

    std::vector<long long> xs, ys;
    xs.reserve(s.pairs.size());
    ys.reserve(s.pairs.size());
    bool any_pos_pos = false;
    for (const auto& [x, y] : s.pairs) {
        if (x < 0 || y < 0)
            throw std::invalid_argument("estimate_bounds: negative count in sample");
        xs.push_back(x);
        ys.push_back(y);
        any_pos_pos = any_pos_pos || (x > 0 && y > 0);
    }
    std::sort(xs.begin(), xs.end());
    std::sort(ys.begin(), ys.end());

    const double dn = static_cast<double>(n);
    const auto zero_count = [](const std::vector<long long>& v) {
        return std::upper_bound(v.begin(), v.end(), 0) - v.begin();
    };
    const double p1 = static_cast<double>(zero_count(xs)) / dn;
    const double p2 = static_cast<double>(zero_count(ys)) / dn;

    if (!any_pos_pos) {
        BoundsReport r = denuit_bounds(p1, p2);
        r.denuit_fallback = true;
        return r;
    }

    const auto ecdf = [dn](const std::vector<long long>& v) {
        return DiscreteCdf([&v, dn](long long t) {
            if (t < 0) return 0.0;
            return static_cast<double>(std::upper_bound(v.begin(), v.end(), t) - v.begin()) / dn;
        });
    };
    const DiscreteCdf F = ecdf(xs);
    const DiscreteCdf G = ecdf(ys);

    // Pair frequency of tied positive values across the whole sample.
    const auto tie_freq = [n](const std::vector<long long>& v) {
        double tied = 0.0;
        for (std::size_t i = 0; i < v.size();) {
            std::size_t j = i;
            while (j < v.size() && v[j] == v[i]) ++j;
            if (v[i] > 0) {
                const double run = static_cast<double>(j - i);
                tied += run * (run - 1.0);
            }
            i = j;
        }
        return tied / (static_cast<double>(n) * static_cast<double>(n - 1));
    };
    const double t = std::max(tie_freq(xs), tie_freq(ys));

    BoundsReport r;
    r.kind = BoundKind::estimated_tauA;
    r.pU_t11 = t;

    if (p1 <= p2) {
        const long long st = find_threshold_upper(F, p2);
        r.s_tilde = st;
        r.upper = (1.0 - p2 * p2) - (1.0 - p2) * (1.0 - p2) * t
                - 2.0 * (p2 - F(st - 1)) * (F(st) - p2);
    } else {
        const long long tt = find_threshold_upper(G, p1);
        r.t_tilde = tt;
        r.upper = (1.0 - p1 * p1) - (1.0 - p1) * (1.0 - p1) * t
                - 2.0 * (p1 - G(tt - 1)) * (G(tt) - p1);
    }

    const double rest = 1.0 - p1 - p2;
    if (rest < 0.0) {
        r.lower = -2.0 * (1.0 - p1) * (1.0 - p2);
    } else {
        r.pL_t11 = t;
        // A margin with no observed zeros contributes no crossing correction:
        // its term carries a factor that vanishes as its zero frequency does.
        double corr_x = 0.0, corr_y = 0.0;
        if (p2 > 0.0) {
            const long long sp = find_threshold_lower(F, p2);
            r.s_tilde_prime = sp;
            corr_x = (F(sp) + p2 - 1.0) * (1.0 - p2 - F(sp - 1));
        }
        if (p1 > 0.0) {
            const long long tp = find_threshold_lower(G, p1);
            r.t_tilde_prime = tp;
            corr_y = (G(tp) + p1 - 1.0) * (1.0 - p1 - G(tp - 1));
        }
        r.lower = (p1 * p1 + p2 * p2 - 1.0) + rest * rest * t + 2.0 * (corr_x + corr_y);
    }
    return r;
}

} // namespace zitau

#include "zitau/oracle.hpp"

#include <stdexcept>

#include "zitau/errors.hpp"

namespace zitau {

namespace {

// Concordance-minus-discordance sum over a (possibly sub-probability) mass
// grid: 2 sum p(x,y) H(x-1,y-1) - 2 sum p(x,y) (F(x-1) - H(x-1,y)). The
// identity is bilinear, so it needs no normalization; on a block of total
// mass m it returns m^2 * tau of the conditioned distribution.
double tau_mass_sum(const Eigen::ArrayXXd& p) {
    const Eigen::Index rows = p.rows(), cols = p.cols();

    Eigen::ArrayXXd H = p;
    for (Eigen::Index x = 1; x < rows; ++x) H.row(x) += H.row(x - 1);
    for (Eigen::Index y = 1; y < cols; ++y) H.col(y) += H.col(y - 1);

    Eigen::ArrayXd Fx = p.rowwise().sum();
    for (Eigen::Index x = 1; x < rows; ++x) Fx(x) += Fx(x - 1);

    double conc = 0.0, disc = 0.0;
    for (Eigen::Index x = 0; x < rows; ++x) {
        for (Eigen::Index y = 0; y < cols; ++y) {
            const double cell = p(x, y);
            if (cell == 0.0) continue;
            const double h_mm = (x > 0 && y > 0) ? H(x - 1, y - 1) : 0.0;
            const double h_my = (x > 0) ? H(x - 1, y) : 0.0;
            const double f_m = (x > 0) ? Fx(x - 1) : 0.0;
            conc += cell * h_mm;
            disc += cell * (f_m - h_my);
        }
    }
    return 2.0 * (conc - disc);
}

void require_tail(const JointPmfGrid& g, const char* who) {
    if (g.tail_mass > 1e-8)
        throw precision_error(std::string(who) + ": truncated tail mass "
                              + std::to_string(g.tail_mass) + " is too large");
}

// P(A > B) and P(A = B) for mass vectors over the shared value ladder
// 1..M (index i holds the mass at value i + 1). Zero-mass group -> (0,0).
std::pair<double, double> cross_probs(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
    const double sa = a.sum(), sb = b.sum();
    if (!(sa > 0.0) || !(sb > 0.0)) return {0.0, 0.0};
    double greater = 0.0, equal = 0.0, b_below = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        greater += a(i) * b_below;
        equal += a(i) * b(i);
        b_below += b(i);
    }
    return {greater / (sa * sb), equal / (sa * sb)};
}

} // namespace

double true_tau(const JointPmfGrid& g) {
    require_tail(g, "true_tau");
    return tau_mass_sum(g.probs);
}

double true_tau_bruteforce(const JointPmfGrid& g) {
    if (g.truncation_order > 25)
        throw std::invalid_argument("true_tau_bruteforce: grid larger than the M = 25 cost guard");
    const auto& p = g.probs;
    const Eigen::Index m = p.rows();
    double tau = 0.0;
    for (Eigen::Index x1 = 0; x1 < m; ++x1)
        for (Eigen::Index y1 = 0; y1 < m; ++y1) {
            const double p1 = p(x1, y1);
            if (p1 == 0.0) continue;
            for (Eigen::Index x2 = 0; x2 < m; ++x2)
                for (Eigen::Index y2 = 0; y2 < m; ++y2) {
                    const long long sign = static_cast<long long>((x1 > x2) - (x1 < x2))
                                         * static_cast<long long>((y1 > y2) - (y1 < y2));
                    if (sign != 0) tau += static_cast<double>(sign) * p1 * p(x2, y2);
                }
        }
    return tau;
}

TauDecomposition decompose(const JointPmfGrid& g) {
    require_tail(g, "decompose");
    const auto& p = g.probs;
    const Eigen::Index m = p.rows();

    TauDecomposition d;
    d.tau_direct = tau_mass_sum(p);
    d.p00 = p(0, 0);
    d.p01 = p.row(0).tail(m - 1).sum();
    d.p10 = p.col(0).tail(m - 1).sum();

    const auto both = p.bottomRightCorner(m - 1, m - 1);
    d.p11 = both.sum();

    const Eigen::ArrayXd x10 = p.col(0).tail(m - 1);
    const Eigen::ArrayXd x11 = both.rowwise().sum();
    const Eigen::ArrayXd y01 = p.row(0).tail(m - 1).transpose();
    const Eigen::ArrayXd y11 = both.colwise().sum().transpose();

    std::tie(d.p1_star, d.p1_dagger) = cross_probs(x10, x11);
    std::tie(d.p2_star, d.p2_dagger) = cross_probs(y01, y11);

    if (d.p11 > 0.0) {
        d.tau11 = tau_mass_sum(both) / (d.p11 * d.p11);
    } else {
        d.tau11 = 0.0;
        d.tau11_degenerate = true;
    }

    CrossGroupStats cross;
    cross.p1_star = d.p1_star;
    cross.p1_dagger = d.p1_dagger;
    cross.p2_star = d.p2_star;
    cross.p2_dagger = d.p2_dagger;
    d.tau_A_assembled = tau_adjusted(d.p00, d.p01, d.p10, d.p11, cross, d.tau11);
    return d;
}

} // namespace zitau

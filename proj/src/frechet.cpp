#include "zitau/frechet.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace zitau {

void validate(const FrechetCopula& c) {
    if (!(c.rho >= 0.0 && c.rho <= 1.0))
        throw std::domain_error("FrechetCopula: rho must lie in [0,1]");
}

double frechet_cdf(const FrechetCopula& c, double u, double v) {
    validate(c);
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0))
        throw std::domain_error("frechet_cdf: arguments must lie in [0,1]");
    return (1.0 - c.rho) * u * v + c.rho * std::min(u, v);
}

namespace {

// cdf lookup against a precomputed table; beyond the table the cdf has
// converged, so the last entry stands in for every larger argument.
double table_cdf(const std::vector<double>& t, long long s) {
    if (s < 0) return 0.0;
    if (s >= static_cast<long long>(t.size())) return t.back();
    return t[static_cast<std::size_t>(s)];
}

} // namespace

JointCdf frechet_joint_cdf(const ZipMargin& fx, const ZipMargin& fy, const FrechetCopula& c) {
    validate(fx);
    validate(fy);
    validate(c);
    auto F = std::make_shared<std::vector<double>>(zip_cdf_table(fx));
    auto G = std::make_shared<std::vector<double>>(zip_cdf_table(fy));
    const double rho = c.rho;
    return [F = std::move(F), G = std::move(G), rho](long long x, long long y) {
        const double u = table_cdf(*F, x);
        const double v = table_cdf(*G, y);
        return (1.0 - rho) * u * v + rho * std::min(u, v);
    };
}

JointCdf comonotone_joint_cdf(const ZipMargin& fx, const ZipMargin& fy) {
    validate(fx);
    validate(fy);
    auto F = std::make_shared<std::vector<double>>(zip_cdf_table(fx));
    auto G = std::make_shared<std::vector<double>>(zip_cdf_table(fy));
    return [F = std::move(F), G = std::move(G)](long long x, long long y) {
        return std::min(table_cdf(*F, x), table_cdf(*G, y));
    };
}

JointCdf countermonotone_joint_cdf(const ZipMargin& fx, const ZipMargin& fy) {
    validate(fx);
    validate(fy);
    auto F = std::make_shared<std::vector<double>>(zip_cdf_table(fx));
    auto G = std::make_shared<std::vector<double>>(zip_cdf_table(fy));
    return [F = std::move(F), G = std::move(G)](long long x, long long y) {
        return std::max(table_cdf(*F, x) + table_cdf(*G, y) - 1.0, 0.0);
    };
}

} // namespace zitau

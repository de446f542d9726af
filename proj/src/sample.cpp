#include "zitau/sample.hpp"

#include <stdexcept>

namespace zitau {

PairedSample sample_pairs(const ZipMargin& fx, const ZipMargin& fy,
                          const FrechetCopula& c, long long n, RngStream& rng) {
    validate(fx);
    validate(fy);
    validate(c);
    if (n < 1) throw std::invalid_argument("sample_pairs: n must be at least 1");

    const auto F = zip_cdf_table(fx);
    const auto G = zip_cdf_table(fy);

    PairedSample s;
    s.pairs.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        const double pick = rng.uniform01();
        const double v = pick < c.rho ? u : rng.uniform01();
        s.pairs.emplace_back(quantile_from_cdf_table(F, u), quantile_from_cdf_table(G, v));
    }
    return s;
}

} // namespace zitau

#pragma once

#include <utility>
#include <vector>

#include "zitau/frechet.hpp"
#include "zitau/rng.hpp"
#include "zitau/zip.hpp"

namespace zitau {

// Observed (x, y) pairs of non-negative integer counts.
struct PairedSample {
    std::vector<std::pair<long long, long long>> pairs;

    long long size() const { return static_cast<long long>(pairs.size()); }
};

// Draws n pairs from the margins joined by the mixture copula, using its
// mixture representation: U uniform, V = U with probability rho and a fresh
// uniform otherwise, then (F^-1(U), G^-1(V)). This is exact for this copula;
// no conditional-cdf inversion is involved. Deterministic given the stream.
PairedSample sample_pairs(const ZipMargin& fx, const ZipMargin& fy,
                          const FrechetCopula& c, long long n, RngStream& rng);

} // namespace zitau

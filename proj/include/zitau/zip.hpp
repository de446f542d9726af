#pragma once

#include <vector>

namespace zitau {

// Zero-inflated Poisson margin. pi is the weight of the Poisson component,
// so P(0) = (1 - pi) + pi * exp(-lambda) and the mass at k > 0 is
// pi * Poisson(lambda) pmf. pi = 0 degenerates to a point mass at zero.
struct ZipMargin {
    double pi;
    double lambda;
};

// Throws std::domain_error unless 0 <= pi <= 1 and lambda > 0.
void validate(const ZipMargin& m);

double zero_probability(const ZipMargin& m);
double zip_pmf(const ZipMargin& m, long long k);

// cdf(s) = 0 for s < 0, else (1 - pi) + pi * PoissonCdf(lambda, s).
// The Poisson cdf is accumulated by the pmf recurrence
// pmf(k+1) = pmf(k) * lambda / (k+1), which is stable and needs no
// special-function support.
double zip_cdf(const ZipMargin& m, long long s);

// Generalized inverse: min{s >= 0 : cdf(s) >= u}. Requires 0 < u < 1
// (std::domain_error otherwise).
long long zip_quantile(const ZipMargin& m, double u);

// Smallest M >= 0 with 1 - cdf(M) <= tail_tol. If the cdf converges to its
// double-precision limit before reaching the tolerance, that point is
// returned: no finer truncation is representable.
long long truncation_point(const ZipMargin& m, double tail_tol);

// cdf(0), cdf(1), ... extended until the value reaches 1 in double
// precision (or stops changing). zip_quantile and the samplers both resolve
// uniforms against this table, so they agree bit for bit.
std::vector<double> zip_cdf_table(const ZipMargin& m);

// First index whose table entry is >= u; the last index if u exceeds every
// entry (only possible when the table converged a hair below 1).
long long quantile_from_cdf_table(const std::vector<double>& table, double u);

} // namespace zitau

#include "zitau/zip.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zitau/errors.hpp"

namespace zitau {

void validate(const ZipMargin& m) {
    if (!(m.pi >= 0.0 && m.pi <= 1.0))
        throw std::domain_error("ZipMargin: pi must lie in [0,1]");
    if (!(m.lambda > 0.0))
        throw std::domain_error("ZipMargin: lambda must be positive");
}

double zero_probability(const ZipMargin& m) {
    return (1.0 - m.pi) + m.pi * std::exp(-m.lambda);
}

double zip_pmf(const ZipMargin& m, long long k) {
    if (k < 0) return 0.0;
    if (k == 0) return zero_probability(m);
    double term = std::exp(-m.lambda);
    for (long long i = 0; i < k; ++i) term *= m.lambda / static_cast<double>(i + 1);
    return m.pi * term;
}

namespace {

double assemble_cdf(double pi, double poisson_sum) {
    return std::min((1.0 - pi) + pi * std::min(poisson_sum, 1.0), 1.0);
}

} // namespace

double zip_cdf(const ZipMargin& m, long long s) {
    if (s < 0) return 0.0;
    double term = std::exp(-m.lambda);
    double sum = term;
    for (long long k = 0; k < s; ++k) {
        term *= m.lambda / static_cast<double>(k + 1);
        sum += term;
    }
    return assemble_cdf(m.pi, sum);
}

std::vector<double> zip_cdf_table(const ZipMargin& m) {
    std::vector<double> table;
    double term = std::exp(-m.lambda);
    double sum = term;
    for (long long k = 0;; ++k) {
        table.push_back(assemble_cdf(m.pi, sum));
        if (table.back() >= 1.0) break;
        term *= m.lambda / static_cast<double>(k + 1);
        const double next = sum + term;
        // Past the mode the terms shrink; once they stop moving the sum the
        // cdf is frozen at its double-precision limit.
        if (next == sum && static_cast<double>(k) >= m.lambda) break;
        sum = next;
    }
    return table;
}

long long quantile_from_cdf_table(const std::vector<double>& table, double u) {
    const auto it = std::lower_bound(table.begin(), table.end(), u);
    if (it == table.end()) return static_cast<long long>(table.size()) - 1;
    return it - table.begin();
}

long long zip_quantile(const ZipMargin& m, double u) {
    if (!(u > 0.0 && u < 1.0))
        throw std::domain_error("zip_quantile: u must lie strictly inside (0,1)");
    return quantile_from_cdf_table(zip_cdf_table(m), u);
}

long long truncation_point(const ZipMargin& m, double tail_tol) {
    if (!(tail_tol > 0.0))
        throw std::domain_error("truncation_point: tail_tol must be positive");
    double term = std::exp(-m.lambda);
    double sum = term;
    for (long long s = 0;; ++s) {
        if (1.0 - assemble_cdf(m.pi, sum) <= tail_tol) return s;
        term *= m.lambda / static_cast<double>(s + 1);
        const double next = sum + term;
        if (next == sum && static_cast<double>(s) >= m.lambda) return s;
        if (s > 10'000'000)
            throw precision_error("truncation_point: cdf failed to approach 1");
        sum = next;
    }
}

} // namespace zitau

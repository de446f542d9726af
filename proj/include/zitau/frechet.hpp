#pragma once

#include <functional>

#include "zitau/zip.hpp"

namespace zitau {

// Mixture copula C(u,v) = (1 - rho) * u * v + rho * min(u,v), rho in [0,1].
// rho = 0 is independence, rho = 1 is the comonotone copula.
struct FrechetCopula {
    double rho;
};

void validate(const FrechetCopula& c);

// C evaluated at (u, v); arguments outside [0,1] raise std::domain_error.
double frechet_cdf(const FrechetCopula& c, double u, double v);

// A bivariate cdf evaluated at integer points, H(x,y) = P(X <= x, Y <= y).
// Negative arguments must yield 0.
using JointCdf = std::function<double(long long, long long)>;

// H(x,y) = C(F(x), G(y)) for the mixture copula with the given margins.
JointCdf frechet_joint_cdf(const ZipMargin& fx, const ZipMargin& fy, const FrechetCopula& c);

// The pointwise extreme joint cdfs with the given margins:
// min(F(x), G(y)) and max(F(x) + G(y) - 1, 0).
JointCdf comonotone_joint_cdf(const ZipMargin& fx, const ZipMargin& fy);
JointCdf countermonotone_joint_cdf(const ZipMargin& fx, const ZipMargin& fy);

} // namespace zitau

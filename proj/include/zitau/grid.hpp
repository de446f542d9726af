#pragma once

#include <Eigen/Dense>

#include "zitau/frechet.hpp"

namespace zitau {

// Truncated bivariate pmf on {0..M}^2. probs(x, y) indexes x by row and y by
// column; tail_mass = 1 - probs.sum() is the probability lost to truncation.
struct JointPmfGrid {
    Eigen::ArrayXXd probs;
    long long truncation_order = 0; // M
    double tail_mass = 0.0;
};

// Builds the grid for the margins under the joint cdf cdf2. M is chosen per
// margin so that 1 - F(M) <= tail_tol / 2, then maximized over the two
// margins; cells come from rectangle inclusion-exclusion of cdf2. Cells in
// [-1e-12, 0) are rounding noise and are clamped to 0; anything more negative
// means cdf2 is not a valid cdf (std::invalid_argument), as does a recorded
// tail mass above tail_tol.
JointPmfGrid joint_pmf_grid(const ZipMargin& fx, const ZipMargin& fy,
                            const JointCdf& cdf2, double tail_tol);

} // namespace zitau

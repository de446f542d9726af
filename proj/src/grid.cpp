#include "zitau/grid.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace zitau {

JointPmfGrid joint_pmf_grid(const ZipMargin& fx, const ZipMargin& fy,
                            const JointCdf& cdf2, double tail_tol) {
    validate(fx);
    validate(fy);
    if (!(tail_tol > 0.0))
        throw std::domain_error("joint_pmf_grid: tail_tol must be positive");

    const long long M = std::max(truncation_point(fx, tail_tol / 2.0),
                                 truncation_point(fy, tail_tol / 2.0));

    // H(x,y) on {-1..M}^2, stored with an index offset of 1.
    Eigen::ArrayXXd H(M + 2, M + 2);
    for (long long x = -1; x <= M; ++x)
        for (long long y = -1; y <= M; ++y)
            H(x + 1, y + 1) = cdf2(x, y);

    // p(x,y) = H(x,y) - H(x-1,y) - H(x,y-1) + H(x-1,y-1)
    Eigen::ArrayXXd p = H.bottomRightCorner(M + 1, M + 1)
                      - H.topRightCorner(M + 1, M + 1)
                      - H.bottomLeftCorner(M + 1, M + 1)
                      + H.topLeftCorner(M + 1, M + 1);

    const double worst = p.minCoeff();
    if (worst < -1e-12) {
        std::ostringstream msg;
        msg << "joint_pmf_grid: cdf produced a negative cell (" << worst
            << "); not a valid joint cdf";
        throw std::invalid_argument(msg.str());
    }
    p = p.max(0.0); // [-1e-12, 0) is rounding noise

    const double tail = std::max(1.0 - p.sum(), 0.0);
    if (tail > tail_tol) {
        std::ostringstream msg;
        msg << "joint_pmf_grid: tail mass " << tail << " exceeds tolerance " << tail_tol
            << "; cdf is inconsistent with the margins";
        throw std::invalid_argument(msg.str());
    }

    return JointPmfGrid{std::move(p), M, tail};
}

} // namespace zitau

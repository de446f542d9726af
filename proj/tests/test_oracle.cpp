#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "zitau/errors.hpp"
#include "zitau/oracle.hpp"
#include "zitau/rng.hpp"

using namespace zitau;

namespace {

JointPmfGrid random_dense_grid(RngStream& rng, Eigen::Index side) {
    JointPmfGrid g;
    g.probs = Eigen::ArrayXXd(side, side);
    for (Eigen::Index x = 0; x < side; ++x)
        for (Eigen::Index y = 0; y < side; ++y) g.probs(x, y) = rng.uniform01();
    g.probs /= g.probs.sum();
    g.truncation_order = side - 1;
    g.tail_mass = 0.0;
    return g;
}

} // namespace

TEST_CASE("prefix-sum tau equals the quadruple-loop reference") {
    const ZipMargin fx{0.5, 1.5}, fy{0.7, 2.5};
    for (const double rho : {0.0, 0.3, 1.0}) {
        const JointPmfGrid g =
            joint_pmf_grid(fx, fy, frechet_joint_cdf(fx, fy, FrechetCopula{rho}), 1e-8);
        REQUIRE(g.truncation_order <= 25);
        CHECK(std::fabs(true_tau(g) - true_tau_bruteforce(g)) <= 1e-12);
    }
    RngStream rng(31);
    for (int i = 0; i < 20; ++i) {
        const JointPmfGrid g = random_dense_grid(rng, 6);
        CHECK(std::fabs(true_tau(g) - true_tau_bruteforce(g)) <= 1e-12);
    }
}

TEST_CASE("independent margins have zero tau") {
    const ZipMargin fx{0.8, 2.0}, fy{0.2, 8.0};
    const JointPmfGrid g =
        joint_pmf_grid(fx, fy, frechet_joint_cdf(fx, fy, FrechetCopula{0.0}), 1e-10);
    CHECK(std::fabs(true_tau(g)) <= 1e-8);
}

TEST_CASE("oracle tau reference values for the study scenarios") {
    // frozen from an independent implementation of the same quantities
    const struct {
        double lambda_f, lambda_g, pi, rho, tau;
    } rows[] = {
        {2, 2, 0.2, 0.2, 0.058617}, {2, 2, 0.2, 0.5, 0.149417}, {2, 2, 0.2, 0.8, 0.243665},
        {2, 2, 0.8, 0.2, 0.132381}, {2, 2, 0.8, 0.5, 0.353885}, {2, 2, 0.8, 0.8, 0.602908},
        {2, 8, 0.2, 0.2, 0.058548}, {2, 8, 0.2, 0.5, 0.149141}, {2, 8, 0.2, 0.8, 0.243058},
        {2, 8, 0.8, 0.2, 0.130898}, {2, 8, 0.8, 0.5, 0.348880}, {2, 8, 0.8, 0.8, 0.592825},
        {8, 8, 0.2, 0.2, 0.066264}, {8, 8, 0.2, 0.5, 0.170264}, {8, 8, 0.2, 0.8, 0.279787},
        {8, 8, 0.8, 0.2, 0.140995}, {8, 8, 0.8, 0.5, 0.388220}, {8, 8, 0.8, 0.8, 0.678322},
    };
    for (const auto& r : rows) {
        const ZipMargin fx{r.pi, r.lambda_f}, fy{r.pi, r.lambda_g};
        const JointPmfGrid g =
            joint_pmf_grid(fx, fy, frechet_joint_cdf(fx, fy, FrechetCopula{r.rho}), 1e-10);
        CHECK(true_tau(g) == doctest::Approx(r.tau).scale(1.0).epsilon(1e-6));
    }
}

TEST_CASE("decomposition identity holds on random grids") {
    RngStream rng(7);
    for (int i = 0; i < 25; ++i) {
        const JointPmfGrid g = random_dense_grid(rng, 7);
        const TauDecomposition d = decompose(g);
        CHECK(std::fabs(d.tau_direct - d.tau_A_assembled) <= 1e-9);
        CHECK(d.p00 + d.p01 + d.p10 + d.p11 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(d.tau11 >= -1.0 - 1e-12);
        CHECK(d.tau11 <= 1.0 + 1e-12);
        CHECK(d.p1_star + d.p1_dagger <= 1.0 + 1e-12);
    }
}

TEST_CASE("decomposition fields on a worked 2x2 grid") {
    JointPmfGrid g;
    g.probs = Eigen::ArrayXXd(2, 2);
    g.probs << 0.1, 0.2, 0.3, 0.4; // p(0,0)=0.1, p(0,1)=0.2, p(1,0)=0.3, p(1,1)=0.4
    g.truncation_order = 1;
    g.tail_mass = 0.0;
    const TauDecomposition d = decompose(g);
    CHECK(d.p00 == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(d.p01 == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(d.p10 == doctest::Approx(0.3).epsilon(1e-15));
    CHECK(d.p11 == doctest::Approx(0.4).epsilon(1e-15));
    CHECK(d.tau11 == 0.0);           // single-point conditional
    CHECK(d.p1_star == 0.0);         // X10 and X11 both sit at 1
    CHECK(d.p1_dagger == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.p2_dagger == doctest::Approx(1.0).epsilon(1e-15));
    // two concordant cell pairs (0,0)x(1,1), two discordant (0,1)x(1,0)
    CHECK(d.tau_direct == doctest::Approx(2 * 0.1 * 0.4 - 2 * 0.2 * 0.3).epsilon(1e-14));
    CHECK(std::fabs(d.tau_direct - d.tau_A_assembled) <= 1e-15);
}

TEST_CASE("oracle guards") {
    JointPmfGrid sparse;
    sparse.probs = Eigen::ArrayXXd::Constant(3, 3, 0.1); // sums to 0.9
    sparse.truncation_order = 2;
    sparse.tail_mass = 0.1;
    CHECK_THROWS_AS(true_tau(sparse), precision_error);
    CHECK_THROWS_AS(decompose(sparse), precision_error);

    JointPmfGrid big;
    big.probs = Eigen::ArrayXXd::Constant(31, 31, 1.0 / (31 * 31));
    big.truncation_order = 30;
    big.tail_mass = 0.0;
    CHECK_THROWS_AS(true_tau_bruteforce(big), std::invalid_argument);
}

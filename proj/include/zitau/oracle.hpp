#pragma once

#include "zitau/estimators.hpp"
#include "zitau/grid.hpp"

namespace zitau {

// Every ingredient of the quadrant decomposition computed exactly from a
// known joint pmf, alongside the directly summed tau. tau_direct and
// tau_A_assembled are equal up to grid rounding; that identity is what the
// oracle exists to check.
struct TauDecomposition {
    double tau_direct = 0;
    double p00 = 0, p01 = 0, p10 = 0, p11 = 0;
    double tau11 = 0;
    double p1_star = 0, p1_dagger = 0, p2_star = 0, p2_dagger = 0;
    double tau_A_assembled = 0;
    bool tau11_degenerate = false; // p11 = 0: tau11 reported as 0
};

// tau = P(concordant) - P(discordant) for two independent copies, via prefix
// sums: P_conc = 2 sum p(x,y) H(x-1,y-1) and
// P_disc = 2 sum p(x,y) (F(x-1) - H(x-1,y)). O(M^2). Requires
// tail_mass <= 1e-8 (precision_error otherwise).
double true_tau(const JointPmfGrid& g);

// The same quantity as a quadruple loop over cell pairs, O(M^4). Exists to
// check true_tau against an implementation too simple to be wrong. Guarded
// at M <= 25 (std::invalid_argument).
double true_tau_bruteforce(const JointPmfGrid& g);

// Quadrant probabilities, conditional crossing/tie probabilities, tau within
// the both-positive block, and the assembled decomposition. Same tail
// requirement as true_tau.
TauDecomposition decompose(const JointPmfGrid& g);

} // namespace zitau

#pragma once

#include <string>
#include <vector>

#include "feesim/fund_dynamics.hpp"
#include "feesim/grid.hpp"
#include "feesim/market_model.hpp"
#include "feesim/path_engine.hpp"
#include "feesim/policies.hpp"

namespace feesim {

// Manager's private wealth F on the simulation grid, together with the fee
// stream it consumed and the excess F - C. For the optimal set-aside policy
// the excess grid is the primary object (a constant-proportion lognormal,
// identical across fee schemes on a fixed batch) and F = excess + C.
struct WealthTrajectory {
    std::string policy_id;
    double dt = 0.0;
    double f0 = 0.0;
    PathGrid F;
    PathGrid excess;
    PathGrid C;  // copy of the fee stream, aligned with F
};

// Explicit scheme on the wealth dynamics:
// F_{k+1} = F_k + F_k pi_k (mu_f dt + sigma_f dW_f,k) + dC_k, with the
// policy evaluated at the left endpoint. Throws StabilityError at the first
// (path, step) where F_{k+1} <= 0, and DomainError if the policy breaks its
// bound.
WealthTrajectory simulate_wealth_feedback(const WealthPolicy& policy,
                                          const FundTrajectory& fees,
                                          const ValidatedScenario& scenario,
                                          const PathBatch& batch);

// Exact simulation of the optimal set-aside policy via its decomposition:
// F_t = f0 exp(G_t) + C_t, where G is the cumulative return of the constant
// proportion m = mu_f / (gamma sigma_f^2) on the private asset. The stored
// excess grid equals f0 exp(G) bit-for-bit, so F - C stays positive and
// independent of the fee path by construction.
WealthTrajectory simulate_wealth_optimal(const FundTrajectory& fees,
                                         const ValidatedScenario& scenario,
                                         const PathBatch& batch);

// Left-endpoint Stieltjes sum of the fee inflow compounded at the private
// return: per path, sum_k exp(R_T - R_{t_k}) dC_k, so that terminal wealth
// decomposes as F_T = F_0 exp(R_T) + result. fee_increments has one entry
// per step (n_paths x n_steps), dC_k being the fee earned over step k.
std::vector<double> fee_inflow_integral(const ReturnGrid& r_f,
                                        const PathGrid& fee_increments);

// Per-step increments of a cumulative fee grid.
PathGrid fee_increments_of(const PathGrid& cumulative_fees);

}  // namespace feesim

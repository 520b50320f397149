#pragma once

#include "feesim/grid.hpp"
#include "feesim/market_model.hpp"
#include "feesim/path_engine.hpp"

namespace feesim {

// Fund value X, high-water mark X_star (hedge scheme only) and cumulative
// fees C on the simulation grid. Invariants: X > 0 everywhere; under the
// hedge scheme X_star equals the pathwise running maximum of X at every
// node and C = alpha/(1-alpha) (X_star - x0); C is nondecreasing under both
// schemes with C_0 = 0.
struct FundTrajectory {
    FeeScheme scheme;
    double dt = 0.0;
    double x0 = 0.0;
    PathGrid X;
    PathGrid X_star;  // empty for the mutual scheme
    PathGrid C;

    bool has_high_water_mark() const { return !X_star.empty(); }
};

// Exact pathwise transform of a hedge fund under fee rate alpha:
// X = x0 exp(R - alpha R*), with R* the running maximum of R. The stored
// high-water mark is the running maximum of the X grid, which makes the
// discrete identity max_{s<=t} X_s = X_star_t hold exactly; it agrees with
// x0 exp((1-alpha) R*) to round-off.
FundTrajectory simulate_hedge_fund(const ReturnGrid& r, double alpha, double x0);

// Explicit scheme on the reflected dynamics, for cross-validation of the
// transform. Within a step that crosses the high-water mark, the increment
// above the mark is split with factor (1 - alpha):
//   X_pre = X_k (1 + pi (mu dt + sigma dW_k));
//   X_pre > X*_k:  X_{k+1} = X*_k + (1-alpha)(X_pre - X*_k), X*_{k+1} = X_{k+1}
//   otherwise:     X_{k+1} = X_pre, X*_{k+1} = X*_k.
// Throws StabilityError at the first step with X_pre <= 0.
FundTrajectory simulate_hedge_fund_euler(double pi_x, const ValidatedScenario& scenario,
                                         const PathBatch& batch);

// Mutual fund under proportional fee phi: X = x0 exp(R - phi t), with
// cumulative fees C_t = phi * integral of X approximated by the trapezoidal
// rule on the grid.
FundTrajectory simulate_mutual_fund(const ReturnGrid& r, double phi, double x0);

}  // namespace feesim

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

#include "feesim/grid.hpp"
#include "feesim/market_model.hpp"

namespace feesim {

// Correlated Brownian increments on a uniform grid. Each increment is
// Normal(0, dt) with corr(dW_x, dW_f) = rho, built as
// W^x = rho W^f + sqrt(1 - rho^2) W^perp. Entries depend only on
// (seed, global path index, step index), so regeneration is exact under any
// chunking or thread count. `first_path` is the global index of row 0.
struct PathBatch {
    double dt = 0.0;
    std::size_t n_paths = 0;
    std::size_t n_steps = 0;
    std::uint64_t seed = 0;
    std::size_t first_path = 0;
    double rho = 0.0;
    PathGrid dW_x;  // n_paths x n_steps
    PathGrid dW_f;
};

// Cumulative grid on the simulation nodes (time 0 entry included, = 0 for
// cumulative log returns).
struct ReturnGrid {
    double dt = 0.0;
    PathGrid values;  // n_paths x (n_steps + 1)

    std::size_t n_paths() const { return values.n_paths(); }
    std::size_t n_steps() const { return values.n_nodes() ? values.n_nodes() - 1 : 0; }
};

inline constexpr std::size_t kDefaultBatchBudgetBytes = std::size_t{1} << 29;  // 512 MiB

// Materializes increments for paths [first_path, first_path + count).
// count == npos means all scenario paths. Throws ResourceError when the
// batch would exceed the memory budget; callers then stream in chunks.
PathBatch generate_increments(const ValidatedScenario& scenario,
                              std::size_t first_path = 0,
                              std::size_t count = std::numeric_limits<std::size_t>::max(),
                              std::size_t memory_budget_bytes = kDefaultBatchBudgetBytes,
                              int n_threads = 0);

enum class Asset { Fund, Private };

// Cumulative log return R of a constant proportion pi:
// R_{k+1} = R_k + (mu pi - sigma^2 pi^2 / 2) dt + sigma pi dW_k,
// with pi evaluated at the left endpoint of each step.
ReturnGrid cumulative_return(double pi, double mu, double sigma,
                             const PathBatch& batch, Asset which);

// Same with a per-node proportion grid (n_paths x n_steps, left endpoints).
ReturnGrid cumulative_return(const PathGrid& pi, double mu, double sigma,
                             const PathBatch& batch, Asset which);

// Pathwise prefix maximum / minimum.
ReturnGrid running_max(const ReturnGrid& grid);
ReturnGrid running_min(const ReturnGrid& grid);

}  // namespace feesim

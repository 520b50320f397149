#pragma once

#include <initializer_list>
#include <vector>

#include "feesim/market_model.hpp"
#include "feesim/path_engine.hpp"

namespace feesim::test {

// Batch with hand-picked increments, one row per path (dW_x == dW_f).
inline PathBatch manual_batch(double dt, const std::vector<std::vector<double>>& rows) {
    PathBatch batch;
    batch.dt = dt;
    batch.n_paths = rows.size();
    batch.n_steps = rows.front().size();
    batch.dW_x = PathGrid(batch.n_paths, batch.n_steps);
    batch.dW_f = PathGrid(batch.n_paths, batch.n_steps);
    for (std::size_t p = 0; p < batch.n_paths; ++p)
        for (std::size_t k = 0; k < batch.n_steps; ++k) {
            batch.dW_x(p, k) = rows[p][k];
            batch.dW_f(p, k) = rows[p][k];
        }
    return batch;
}

inline PathBatch zero_batch(std::size_t n_paths, std::size_t n_steps, double dt) {
    PathBatch batch;
    batch.dt = dt;
    batch.n_paths = n_paths;
    batch.n_steps = n_steps;
    batch.dW_x = PathGrid(n_paths, n_steps, 0.0);
    batch.dW_f = PathGrid(n_paths, n_steps, 0.0);
    return batch;
}

// Sums increments in groups of `group`, producing the same Brownian paths
// on a grid coarsened by that factor.
inline PathBatch coarsen(const PathBatch& fine, std::size_t group) {
    PathBatch out;
    out.dt = fine.dt * static_cast<double>(group);
    out.n_paths = fine.n_paths;
    out.n_steps = fine.n_steps / group;
    out.seed = fine.seed;
    out.first_path = fine.first_path;
    out.rho = fine.rho;
    out.dW_x = PathGrid(out.n_paths, out.n_steps);
    out.dW_f = PathGrid(out.n_paths, out.n_steps);
    for (std::size_t p = 0; p < out.n_paths; ++p)
        for (std::size_t k = 0; k < out.n_steps; ++k) {
            double sx = 0.0, sf = 0.0;
            for (std::size_t j = 0; j < group; ++j) {
                sx += fine.dW_x(p, k * group + j);
                sf += fine.dW_f(p, k * group + j);
            }
            out.dW_x(p, k) = sx;
            out.dW_f(p, k) = sf;
        }
    return out;
}

inline ReturnGrid grid_from(double dt, const std::vector<std::vector<double>>& rows) {
    ReturnGrid out;
    out.dt = dt;
    out.values = PathGrid(rows.size(), rows.front().size());
    for (std::size_t p = 0; p < rows.size(); ++p)
        for (std::size_t k = 0; k < rows[p].size(); ++k) out.values(p, k) = rows[p][k];
    return out;
}

inline ValidatedScenario headline_hedge(double rho = 0.0, std::uint64_t seed = 42,
                                        std::size_t n_paths = 10000,
                                        double horizon = 200.0, double dt = 0.01) {
    return validate({0.08, 0.16, 0.04, 0.10, rho}, FeeScheme::hedge(0.2), {1.0},
                    {horizon, dt, n_paths, seed, 1.0, 1.0});
}

}  // namespace feesim::test

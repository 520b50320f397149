#include "feesim/path_engine.hpp"

#include <cmath>

#include "feesim/errors.hpp"
#include "feesim/numerics.hpp"
#include "feesim/rng.hpp"

namespace feesim {

namespace {
constexpr const char* kModule = "path_engine";
}

PathBatch generate_increments(const ValidatedScenario& scenario,
                              std::size_t first_path, std::size_t count,
                              std::size_t memory_budget_bytes, int n_threads) {
    const std::size_t total = scenario.sim.n_paths;
    if (first_path > total)
        throw DomainError(kModule, "first_path", "beyond configured path count");
    if (count == std::numeric_limits<std::size_t>::max()) count = total - first_path;
    if (first_path + count > total)
        throw DomainError(kModule, "count", "beyond configured path count");

    const std::size_t n_steps = scenario.n_steps;
    const std::size_t bytes = 2 * count * n_steps * sizeof(double);
    if (bytes > memory_budget_bytes)
        throw ResourceError(kModule,
                            "batch of " + std::to_string(count) + " paths x " +
                                std::to_string(n_steps) + " steps needs " +
                                std::to_string(bytes) +
                                " bytes, over the budget of " +
                                std::to_string(memory_budget_bytes) +
                                "; stream it in chunks");

    PathBatch batch;
    batch.dt = scenario.sim.dt;
    batch.n_paths = count;
    batch.n_steps = n_steps;
    batch.seed = scenario.sim.seed;
    batch.first_path = first_path;
    batch.rho = scenario.market.rho;
    batch.dW_x = PathGrid(count, n_steps);
    batch.dW_f = PathGrid(count, n_steps);

    const double sqrt_dt = std::sqrt(scenario.sim.dt);
    const double rho = scenario.market.rho;
    const double rho_comp = std::sqrt(1.0 - rho * rho);

    parallel_for(count, n_threads, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t p = lo; p < hi; ++p) {
            const std::uint64_t global = first_path + p;
            auto wx = batch.dW_x.path(p);
            auto wf = batch.dW_f.path(p);
            for (std::size_t k = 0; k < n_steps; ++k) {
                const auto z = rng::normal_pair(batch.seed, global, k);
                const double dwf = sqrt_dt * z.z1;
                wf[k] = dwf;
                wx[k] = rho * dwf + rho_comp * (sqrt_dt * z.z2);
            }
        }
    });
    return batch;
}

namespace {

const PathGrid& component(const PathBatch& batch, Asset which) {
    return which == Asset::Fund ? batch.dW_x : batch.dW_f;
}

}  // namespace

ReturnGrid cumulative_return(double pi, double mu, double sigma,
                             const PathBatch& batch, Asset which) {
    if (!std::isfinite(pi)) throw DomainError(kModule, "pi", "must be finite");

    const PathGrid& dw = component(batch, which);
    ReturnGrid out;
    out.dt = batch.dt;
    out.values = PathGrid(batch.n_paths, batch.n_steps + 1);

    const double drift = (mu * pi - 0.5 * sigma * sigma * pi * pi) * batch.dt;
    const double vol = sigma * pi;
    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        auto r = out.values.path(p);
        auto w = dw.path(p);
        r[0] = 0.0;
        double acc = 0.0;
        for (std::size_t k = 0; k < batch.n_steps; ++k) {
            acc += drift + vol * w[k];
            r[k + 1] = acc;
        }
    }
    return out;
}

ReturnGrid cumulative_return(const PathGrid& pi, double mu, double sigma,
                             const PathBatch& batch, Asset which) {
    const PathGrid& dw = component(batch, which);
    if (pi.n_paths() != batch.n_paths || pi.n_nodes() != batch.n_steps)
        throw DomainError(kModule, "pi", "grid shape must be n_paths x n_steps");

    ReturnGrid out;
    out.dt = batch.dt;
    out.values = PathGrid(batch.n_paths, batch.n_steps + 1);

    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        auto r = out.values.path(p);
        auto w = dw.path(p);
        auto q = pi.path(p);
        r[0] = 0.0;
        double acc = 0.0;
        for (std::size_t k = 0; k < batch.n_steps; ++k) {
            const double pk = q[k];
            if (!std::isfinite(pk)) throw DomainError(kModule, "pi", "must be finite");
            acc += (mu * pk - 0.5 * sigma * sigma * pk * pk) * batch.dt +
                   sigma * pk * w[k];
            r[k + 1] = acc;
        }
    }
    return out;
}

ReturnGrid running_max(const ReturnGrid& grid) {
    ReturnGrid out;
    out.dt = grid.dt;
    out.values = PathGrid(grid.values.n_paths(), grid.values.n_nodes());
    for (std::size_t p = 0; p < grid.values.n_paths(); ++p) {
        auto src = grid.values.path(p);
        auto dst = out.values.path(p);
        double m = src[0];
        for (std::size_t k = 0; k < src.size(); ++k) {
            if (src[k] > m) m = src[k];
            dst[k] = m;
        }
    }
    return out;
}

ReturnGrid running_min(const ReturnGrid& grid) {
    ReturnGrid out;
    out.dt = grid.dt;
    out.values = PathGrid(grid.values.n_paths(), grid.values.n_nodes());
    for (std::size_t p = 0; p < grid.values.n_paths(); ++p) {
        auto src = grid.values.path(p);
        auto dst = out.values.path(p);
        double m = src[0];
        for (std::size_t k = 0; k < src.size(); ++k) {
            if (src[k] < m) m = src[k];
            dst[k] = m;
        }
    }
    return out;
}

}  // namespace feesim

#include "feesim/wealth_dynamics.hpp"

#include <cmath>

#include "feesim/errors.hpp"

namespace feesim {

namespace {
constexpr const char* kModule = "wealth_dynamics";

void check_alignment(const FundTrajectory& fees, const PathBatch& batch) {
    if (fees.C.n_paths() != batch.n_paths ||
        fees.C.n_nodes() != batch.n_steps + 1)
        throw DomainError(kModule, "fees", "fee stream and batch grids differ");
}
}  // namespace

WealthTrajectory simulate_wealth_feedback(const WealthPolicy& policy,
                                          const FundTrajectory& fees,
                                          const ValidatedScenario& scenario,
                                          const PathBatch& batch) {
    check_alignment(fees, batch);

    const double f0 = scenario.sim.f0;
    const double mu = scenario.market.mu_f;
    const double sigma = scenario.market.sigma_f;
    const double dt = batch.dt;
    const std::size_t n_paths = batch.n_paths;
    const std::size_t n_steps = batch.n_steps;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    WealthTrajectory out;
    out.policy_id = policy.descriptor;
    out.dt = dt;
    out.f0 = f0;
    out.F = PathGrid(n_paths, n_steps + 1);
    out.excess = PathGrid(n_paths, n_steps + 1);
    out.C = fees.C;

    for (std::size_t p = 0; p < n_paths; ++p) {
        auto f = out.F.path(p);
        auto ex = out.excess.path(p);
        auto c = fees.C.path(p);
        auto x = fees.X.path(p);
        auto xs = fees.has_high_water_mark() ? fees.X_star.path(p)
                                             : std::span<const double>{};
        auto w = batch.dW_f.path(p);
        f[0] = f0;
        ex[0] = f0 - c[0];
        for (std::size_t k = 0; k < n_steps; ++k) {
            const double t = static_cast<double>(k) * dt;
            const double hwm = xs.empty() ? nan : xs[k];
            const double pik = policy(t, f[k], c[k], x[k], hwm);
            if (!std::isfinite(pik) || std::abs(pik) > policy.bound)
                throw DomainError(kModule, "policy",
                                  "proportion " + std::to_string(pik) +
                                      " breaks the bound " +
                                      std::to_string(policy.bound));
            const double dc = c[k + 1] - c[k];
            const double next = f[k] + f[k] * pik * (mu * dt + sigma * w[k]) + dc;
            if (next <= 0.0)
                throw StabilityError(kModule, batch.first_path + p, k,
                                     "wealth left the positive domain; reduce "
                                     "dt or the policy's leverage");
            f[k + 1] = next;
            ex[k + 1] = next - c[k + 1];
        }
    }
    return out;
}

WealthTrajectory simulate_wealth_optimal(const FundTrajectory& fees,
                                         const ValidatedScenario& scenario,
                                         const PathBatch& batch) {
    check_alignment(fees, batch);

    const double f0 = scenario.sim.f0;
    const double m = merton_proportion(scenario.market.mu_f, scenario.market.sigma_f,
                                       scenario.prefs.gamma);
    const ReturnGrid g = cumulative_return(m, scenario.market.mu_f,
                                           scenario.market.sigma_f, batch,
                                           Asset::Private);

    WealthTrajectory out;
    out.policy_id = optimal_wealth_policy(fees.scheme, scenario.market,
                                          scenario.prefs.gamma)
                        .descriptor;
    out.dt = batch.dt;
    out.f0 = f0;
    out.F = PathGrid(batch.n_paths, batch.n_steps + 1);
    out.excess = PathGrid(batch.n_paths, batch.n_steps + 1);
    out.C = fees.C;

    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        auto f = out.F.path(p);
        auto ex = out.excess.path(p);
        auto gg = g.values.path(p);
        auto c = fees.C.path(p);
        for (std::size_t k = 0; k < gg.size(); ++k) {
            ex[k] = f0 * std::exp(gg[k]);
            f[k] = ex[k] + c[k];
        }
    }
    return out;
}

std::vector<double> fee_inflow_integral(const ReturnGrid& r_f,
                                        const PathGrid& fee_increments) {
    if (fee_increments.n_paths() != r_f.n_paths() ||
        fee_increments.n_nodes() != r_f.n_steps())
        throw DomainError(kModule, "fee_increments",
                          "grid shape must be n_paths x n_steps");

    std::vector<double> out(r_f.n_paths());
    for (std::size_t p = 0; p < r_f.n_paths(); ++p) {
        auto r = r_f.values.path(p);
        auto dc = fee_increments.path(p);
        const double r_T = r[r.size() - 1];
        double acc = 0.0;
        for (std::size_t k = 0; k < dc.size(); ++k)
            acc += std::exp(r_T - r[k]) * dc[k];
        out[p] = acc;
    }
    return out;
}

PathGrid fee_increments_of(const PathGrid& cumulative_fees) {
    PathGrid out(cumulative_fees.n_paths(), cumulative_fees.n_nodes() - 1);
    for (std::size_t p = 0; p < out.n_paths(); ++p) {
        auto c = cumulative_fees.path(p);
        auto d = out.path(p);
        for (std::size_t k = 0; k < d.size(); ++k) d[k] = c[k + 1] - c[k];
    }
    return out;
}

}  // namespace feesim

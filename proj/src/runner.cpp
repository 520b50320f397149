#include "feesim/runner.hpp"

#include <cmath>

#include "feesim/errors.hpp"
#include "feesim/numerics.hpp"
#include "feesim/policies.hpp"
#include "feesim/rng.hpp"

namespace feesim {

namespace {
constexpr const char* kModule = "runner";
}

TerminalMulti simulate_terminal_multi(const ValidatedScenario& scenario,
                                      std::span<const double> pi_x_candidates,
                                      const WealthRule& rule, int n_threads) {
    const std::size_t nc = pi_x_candidates.size();
    if (nc == 0) throw DomainError(kModule, "pi_x_candidates", "must be nonempty");
    for (double pi : pi_x_candidates)
        if (!std::isfinite(pi) || std::abs(pi) > kDefaultPolicyBound)
            throw DomainError(kModule, "pi_x_candidates",
                              "proportion breaks the policy bound");

    const std::size_t n_paths = scenario.sim.n_paths;
    const std::size_t n_steps = scenario.n_steps;
    const double dt = scenario.sim.dt;
    const double sqrt_dt = std::sqrt(dt);
    const double rho = scenario.market.rho;
    const double rho_comp = std::sqrt(1.0 - rho * rho);
    const double x0 = scenario.sim.x0;
    const double f0 = scenario.sim.f0;
    const bool hedge = scenario.fees.is_hedge();
    const double alpha = hedge ? scenario.fees.alpha() : 0.0;
    const double phi = hedge ? 0.0 : scenario.fees.phi();
    const double fee_factor = hedge ? alpha / (1.0 - alpha) : 0.0;
    const double one_minus_alpha = 1.0 - alpha;
    const bool optimal_wealth = rule.kind == WealthRule::Kind::SetAsideOptimal;

    // Per-candidate drift/vol of the fund's cumulative log return.
    std::vector<double> drift(nc), vol(nc);
    for (std::size_t c = 0; c < nc; ++c) {
        const double pi = pi_x_candidates[c];
        drift[c] = (scenario.market.mu_x * pi -
                    0.5 * scenario.market.sigma_x * scenario.market.sigma_x * pi * pi) *
                   dt;
        vol[c] = scenario.market.sigma_x * pi;
    }

    // Excess wealth runs the Merton constant on the private asset.
    double g_drift = 0.0, g_vol = 0.0;
    if (optimal_wealth) {
        const double m = merton_proportion(scenario.market.mu_f,
                                           scenario.market.sigma_f,
                                           scenario.prefs.gamma);
        g_drift = (scenario.market.mu_f * m -
                   0.5 * scenario.market.sigma_f * scenario.market.sigma_f * m * m) *
                  dt;
        g_vol = scenario.market.sigma_f * m;
    }

    TerminalMulti out;
    out.n_candidates = nc;
    out.n_paths = n_paths;
    out.wealth.assign(nc * n_paths, 0.0);
    out.fund.assign(nc * n_paths, 0.0);
    std::vector<std::uint64_t> path_hash(n_paths, 0);

    parallel_for(n_paths, n_threads, [&](std::size_t lo, std::size_t hi) {
        std::vector<double> r(nc), rmax(nc), x_prev(nc), c_trapz(nc);
        for (std::size_t p = lo; p < hi; ++p) {
            std::fill(r.begin(), r.end(), 0.0);
            std::fill(rmax.begin(), rmax.end(), 0.0);
            if (!hedge) {
                std::fill(x_prev.begin(), x_prev.end(), x0);
                std::fill(c_trapz.begin(), c_trapz.end(), 0.0);
            }
            double g = 0.0;
            std::uint64_t h = fnv1a_init();
            for (std::size_t k = 0; k < n_steps; ++k) {
                const auto z = rng::normal_pair(scenario.sim.seed, p, k);
                const double dwf = sqrt_dt * z.z1;
                const double dwx = rho * dwf + rho_comp * (sqrt_dt * z.z2);
                h = fnv1a_update(h, dwx);
                h = fnv1a_update(h, dwf);
                if (hedge) {
                    for (std::size_t c = 0; c < nc; ++c) {
                        const double rc = r[c] + drift[c] + vol[c] * dwx;
                        r[c] = rc;
                        if (rc > rmax[c]) rmax[c] = rc;
                    }
                } else {
                    const double t_next = static_cast<double>(k + 1) * dt;
                    for (std::size_t c = 0; c < nc; ++c) {
                        r[c] += drift[c] + vol[c] * dwx;
                        const double xk = x0 * std::exp(r[c] - phi * t_next);
                        c_trapz[c] += phi * 0.5 * (x_prev[c] + xk) * dt;
                        x_prev[c] = xk;
                    }
                }
                if (optimal_wealth) g += g_drift + g_vol * dwf;
            }
            const double excess = optimal_wealth ? f0 * std::exp(g) : f0;
            for (std::size_t c = 0; c < nc; ++c) {
                double fund_T, fees_T;
                if (hedge) {
                    const double x_star = x0 * std::exp(one_minus_alpha * rmax[c]);
                    fees_T = fee_factor * (x_star - x0);
                    fund_T = x0 * std::exp(r[c] - alpha * rmax[c]);
                } else {
                    fees_T = c_trapz[c];
                    fund_T = x_prev[c];
                }
                out.fund[c * n_paths + p] = fund_T;
                out.wealth[c * n_paths + p] = excess + fees_T;
            }
            path_hash[p] = h;
        }
    });

    std::uint64_t checksum = fnv1a_init();
    for (std::uint64_t h : path_hash) checksum = fnv1a_update(checksum, h);
    out.increments_checksum = checksum;
    return out;
}

TerminalBatch simulate_terminal(const ValidatedScenario& scenario, double pi_x,
                                const WealthRule& rule, int n_threads) {
    const double candidates[1] = {pi_x};
    TerminalMulti multi = simulate_terminal_multi(scenario, candidates, rule, n_threads);
    TerminalBatch out;
    out.wealth = std::move(multi.wealth);
    out.fund = std::move(multi.fund);
    out.increments_checksum = multi.increments_checksum;
    return out;
}

}  // namespace feesim

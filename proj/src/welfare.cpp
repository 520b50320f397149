#include "feesim/welfare.hpp"

#include <algorithm>
#include <cmath>

#include "feesim/errors.hpp"
#include "feesim/io.hpp"
#include "feesim/numerics.hpp"

namespace feesim {

namespace {

constexpr const char* kModule = "welfare";

void check_inputs(std::span<const double> wealth, double horizon_T) {
    if (wealth.empty())
        throw DomainError(kModule, "terminal_wealth", "must be nonempty");
    if (!(horizon_T > 0.0))
        throw DomainError(kModule, "horizon_T", "must be positive");
    for (double w : wealth)
        if (!(w > 0.0) || !std::isfinite(w))
            throw DomainError(kModule, "terminal_wealth", "must be positive and finite");
}

}  // namespace

EsrEstimate esr_log(std::span<const double> terminal_wealth, double horizon_T) {
    check_inputs(terminal_wealth, horizon_T);
    const std::size_t n = terminal_wealth.size();
    std::vector<double> logs(n);
    for (std::size_t i = 0; i < n; ++i) logs[i] = std::log(terminal_wealth[i]);
    const MeanSd ms = mean_sd(logs);

    EsrEstimate out;
    out.value = ms.mean / horizon_T;
    out.std_error = ms.sd / (horizon_T * std::sqrt(static_cast<double>(n)));
    out.horizon_T = horizon_T;
    out.n_paths = n;
    out.utility = "log";
    return out;
}

EsrEstimate esr_power(std::span<const double> terminal_wealth, double horizon_T,
                      double gamma) {
    check_inputs(terminal_wealth, horizon_T);
    if (!std::isfinite(gamma) || gamma <= 0.0)
        throw DomainError(kModule, "gamma", "must be positive");
    if (gamma == 1.0)
        throw DomainError(kModule, "gamma", "use esr_log for gamma == 1");

    const double p = 1.0 - gamma;
    const std::size_t n = terminal_wealth.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = p * std::log(terminal_wealth[i]);
    const double shift = *std::max_element(y.begin(), y.end());

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::exp(y[i] - shift);
    const MeanSd ms = mean_sd(w);
    if (!(ms.mean > 0.0) || !std::isfinite(ms.mean))
        throw NumericalError(kModule,
                             "power-utility mass degenerated even after shifting");

    EsrEstimate out;
    out.value = (shift + std::log(ms.mean)) / (p * horizon_T);
    out.std_error =
        ms.sd / (ms.mean * std::sqrt(static_cast<double>(n)) * std::abs(p) * horizon_T);
    out.horizon_T = horizon_T;
    out.n_paths = n;
    out.utility = "power(" + format_full(gamma) + ")";
    return out;
}

EsrEstimate esr_for_gamma(std::span<const double> terminal_wealth, double horizon_T,
                          double gamma) {
    return gamma == 1.0 ? esr_log(terminal_wealth, horizon_T)
                        : esr_power(terminal_wealth, horizon_T, gamma);
}

std::vector<EsrEstimate> esr_curve(const ValidatedScenario& scenario,
                                   const FundPolicy& fund_policy,
                                   const WealthRule& wealth_rule,
                                   std::span<const double> horizons, int n_threads) {
    if (horizons.empty()) throw DomainError(kModule, "horizons", "must be nonempty");
    for (std::size_t i = 1; i < horizons.size(); ++i)
        if (!(horizons[i] > horizons[i - 1]))
            throw DomainError(kModule, "horizons", "must be strictly increasing");
    if (!fund_policy.constant)
        throw DomainError(kModule, "fund_policy",
                          "terminal-value runs support constant fund policies only");

    std::vector<EsrEstimate> out;
    out.reserve(horizons.size());
    for (std::size_t i = 0; i < horizons.size(); ++i) {
        SimConfig sim = scenario.sim;
        sim.horizon_T = horizons[i];
        sim.seed = mix_seed(scenario.sim.seed, i);
        const ValidatedScenario sub =
            validate(scenario.market, scenario.fees, scenario.prefs, sim);
        const TerminalBatch batch =
            simulate_terminal(sub, *fund_policy.constant, wealth_rule, n_threads);
        out.push_back(esr_for_gamma(batch.wealth, horizons[i], scenario.prefs.gamma));
    }
    return out;
}

}  // namespace feesim

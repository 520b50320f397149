#include "feesim/optimizer.hpp"

#include <cmath>

#include "feesim/closed_form.hpp"
#include "feesim/errors.hpp"
#include "feesim/io.hpp"
#include "feesim/policies.hpp"

namespace feesim {

namespace {
constexpr const char* kModule = "optimizer";
}

std::vector<double> make_pi_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo))
        throw DomainError(kModule, "pi_grid", "needs lo <= hi and step > 0");
    std::vector<double> grid;
    for (std::size_t i = 0;; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        if (v > hi + 0.5 * step) break;
        grid.push_back(v);
    }
    return grid;
}

GridSearchResult grid_search_fund(const ValidatedScenario& scenario,
                                  std::span<const double> pi_grid,
                                  const WealthRule& wealth_rule, int n_threads) {
    if (pi_grid.empty()) throw DomainError(kModule, "pi_grid", "must be nonempty");

    const TerminalMulti terminals =
        simulate_terminal_multi(scenario, pi_grid, wealth_rule, n_threads);

    GridSearchResult out;
    out.pi_grid.assign(pi_grid.begin(), pi_grid.end());
    out.seed = scenario.sim.seed;
    out.batch_checksum = terminals.increments_checksum;
    out.wealth_rule = wealth_rule.descriptor();
    out.predicted_pi =
        *optimal_fund_policy(scenario.fees, scenario.market, scenario.prefs.gamma)
             .constant;

    out.estimates.reserve(pi_grid.size());
    std::size_t best = 0;
    for (std::size_t c = 0; c < pi_grid.size(); ++c) {
        out.estimates.push_back(esr_for_gamma(terminals.wealth_row(c),
                                              scenario.sim.horizon_T,
                                              scenario.prefs.gamma));
        // Strict improvement only, so ties resolve to the smaller proportion.
        if (out.estimates[c].value > out.estimates[best].value) best = c;
    }
    out.argmax_pi = pi_grid[best];
    return out;
}

SeparationReport separation_experiment(const ValidatedScenario& base,
                                       std::span<const double> rho_list,
                                       std::span<const double> mu_f_list,
                                       std::span<const double> pi_grid,
                                       const WealthRule& wealth_rule,
                                       int n_threads) {
    if (rho_list.empty()) throw DomainError(kModule, "rho_list", "must be nonempty");
    if (mu_f_list.empty()) throw DomainError(kModule, "mu_f_list", "must be nonempty");
    if (pi_grid.size() < 2)
        throw DomainError(kModule, "pi_grid", "needs at least two candidates");

    SeparationReport report;
    report.seed = base.sim.seed;
    report.grid_step = pi_grid[1] - pi_grid[0];
    report.predicted_pi =
        *optimal_fund_policy(base.fees, base.market, base.prefs.gamma).constant;

    for (double rho : rho_list) {
        for (double mu_f : mu_f_list) {
            MarketParams market = base.market;
            market.rho = rho;
            market.mu_f = mu_f;
            const ValidatedScenario variant =
                validate(market, base.fees, base.prefs, base.sim);
            if (esr_closed(variant).active_branch != ActiveBranch::Fund)
                throw DomainError(kModule, "mu_f",
                                  "fund branch not active at rho=" +
                                      format_full(rho) + ", mu_f=" +
                                      format_full(mu_f) +
                                      "; the fund argmax is not identified");
            const GridSearchResult cell =
                grid_search_fund(variant, pi_grid, wealth_rule, n_threads);
            double best_value = cell.estimates.front().value;
            for (const auto& est : cell.estimates)
                best_value = std::max(best_value, est.value);
            report.cells.push_back({rho, mu_f, cell.argmax_pi, best_value,
                                    cell.batch_checksum});
        }
    }

    report.argmax_identical = true;
    report.within_one_step_of_predicted = true;
    for (const auto& cell : report.cells) {
        if (cell.argmax_pi != report.cells.front().argmax_pi)
            report.argmax_identical = false;
        if (std::abs(cell.argmax_pi - report.predicted_pi) >
            report.grid_step * (1.0 + 1e-12))
            report.within_one_step_of_predicted = false;
    }
    return report;
}

}  // namespace feesim

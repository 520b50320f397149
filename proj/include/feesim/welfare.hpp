#pragma once

#include <span>
#include <string>
#include <vector>

#include "feesim/market_model.hpp"
#include "feesim/policies.hpp"
#include "feesim/runner.hpp"

namespace feesim {

// Point estimate of the equivalent safe rate (rate per year) with its
// standard error. std_error is NaN for a single path.
struct EsrEstimate {
    double value = 0.0;
    double std_error = 0.0;
    double horizon_T = 0.0;
    std::size_t n_paths = 0;
    std::string utility;  // "log" or "power(<gamma>)"
};

// Log-utility estimator: mean(ln F_T) / T, standard error
// sd(ln F_T) / (T sqrt(N)). DomainError on nonpositive wealth.
EsrEstimate esr_log(std::span<const double> terminal_wealth, double horizon_T);

// Power-utility estimator with p = 1 - gamma (gamma > 0, gamma != 1):
// (1 / (p T)) ln mean(F_T^p), evaluated through a shifted log-sum-exp so
// large p ln F never overflows; the standard error is delta-method based.
// NumericalError if the shifted mass degenerates.
EsrEstimate esr_power(std::span<const double> terminal_wealth, double horizon_T,
                      double gamma);

// Dispatch: esr_log at gamma == 1, esr_power otherwise.
EsrEstimate esr_for_gamma(std::span<const double> terminal_wealth, double horizon_T,
                          double gamma);

// One estimate per horizon, each on an independently seeded batch, as a
// finite-horizon diagnostic of the long-run limit. Horizons must be
// strictly increasing and each must tile the configured step.
std::vector<EsrEstimate> esr_curve(const ValidatedScenario& scenario,
                                   const FundPolicy& fund_policy,
                                   const WealthRule& wealth_rule,
                                   std::span<const double> horizons,
                                   int n_threads = 0);

}  // namespace feesim

#pragma once

#include <string>

#include "feesim/market_model.hpp"

namespace feesim {

enum class ActiveBranch { Fund, Private, Tie };

std::string to_string(ActiveBranch branch);

// Long-run welfare as the maximum of the fee branch and the private
// branch. Ties are declared only on exact equality, since the optimal
// policies are never unique.
struct WelfareBreakdown {
    double fund_branch = 0.0;
    double private_branch = 0.0;
    double value = 0.0;
    ActiveBranch active_branch = ActiveBranch::Tie;
};

// gamma* = alpha + (1 - alpha) gamma, the risk aversion implied by the
// hedge-fund manager's optimal fund policy.
double effective_risk_aversion(double alpha, double gamma);

// Optimal welfare under the hedge scheme:
// max((1-alpha) nu_x^2 / (2 gamma*), nu_f^2 / (2 gamma)).
WelfareBreakdown esr_hedge_closed(const MarketParams& market, double alpha, double gamma);

// Optimal welfare under the mutual scheme:
// max(nu_x^2 / (2 gamma) - phi, nu_f^2 / (2 gamma)).
WelfareBreakdown esr_mutual_closed(const MarketParams& market, double phi, double gamma);

// Dispatch on the scenario's scheme.
WelfareBreakdown esr_closed(const ValidatedScenario& scenario);

// Sharpe-ratio multiple above which a hedge-fund manager focuses on the
// fund: (1 + alpha / ((1-alpha) gamma))^{1/2}.
double attention_threshold_hedge(double alpha, double gamma);

struct AttentionCondition {
    bool focus_on_fund = false;
    double margin = 0.0;  // (nu_x^2 - nu_f^2)/2 - gamma phi
};

// Mutual-fund attention condition: the fund branch is active exactly when
// (nu_x^2 - nu_f^2)/2 strictly exceeds gamma phi.
AttentionCondition attention_condition_mutual(const MarketParams& market, double phi,
                                              double gamma);

// The fee rate at which the hedge attention threshold holds as equality:
// with r2 = (nu_x/nu_f)^2, alpha* = gamma (r2 - 1) / (1 + gamma (r2 - 1)).
// Requires nu_x > nu_f > 0 for an interior solution.
double fee_indifference_alpha(const MarketParams& market, double gamma);

}  // namespace feesim

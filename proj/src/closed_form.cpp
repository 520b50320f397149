#include "feesim/closed_form.hpp"

#include <cmath>

#include "feesim/errors.hpp"

namespace feesim {

namespace {

constexpr const char* kModule = "closed_form";

WelfareBreakdown breakdown(double fund_branch, double private_branch) {
    WelfareBreakdown out;
    out.fund_branch = fund_branch;
    out.private_branch = private_branch;
    if (fund_branch > private_branch) {
        out.value = fund_branch;
        out.active_branch = ActiveBranch::Fund;
    } else if (private_branch > fund_branch) {
        out.value = private_branch;
        out.active_branch = ActiveBranch::Private;
    } else {
        out.value = fund_branch;
        out.active_branch = ActiveBranch::Tie;
    }
    return out;
}

void check_gamma(double gamma) {
    if (!std::isfinite(gamma) || gamma <= 0.0)
        throw DomainError(kModule, "gamma", "must be positive");
}

void check_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha >= 1.0)
        throw DomainError(kModule, "alpha", "must lie in [0, 1)");
}

}  // namespace

std::string to_string(ActiveBranch branch) {
    switch (branch) {
        case ActiveBranch::Fund: return "fund";
        case ActiveBranch::Private: return "private";
        default: return "tie";
    }
}

double effective_risk_aversion(double alpha, double gamma) {
    check_alpha(alpha);
    check_gamma(gamma);
    return alpha + (1.0 - alpha) * gamma;
}

WelfareBreakdown esr_hedge_closed(const MarketParams& market, double alpha,
                                  double gamma) {
    const double gamma_star = effective_risk_aversion(alpha, gamma);
    const double nu_x = sharpe(market.mu_x, market.sigma_x);
    const double nu_f = sharpe(market.mu_f, market.sigma_f);
    const double fund = (1.0 - alpha) * nu_x * nu_x / (2.0 * gamma_star);
    const double priv = nu_f * nu_f / (2.0 * gamma);
    return breakdown(fund, priv);
}

WelfareBreakdown esr_mutual_closed(const MarketParams& market, double phi,
                                   double gamma) {
    check_gamma(gamma);
    if (!std::isfinite(phi) || phi < 0.0)
        throw DomainError(kModule, "phi", "must be nonnegative");
    const double nu_x = sharpe(market.mu_x, market.sigma_x);
    const double nu_f = sharpe(market.mu_f, market.sigma_f);
    const double fund = nu_x * nu_x / (2.0 * gamma) - phi;
    const double priv = nu_f * nu_f / (2.0 * gamma);
    return breakdown(fund, priv);
}

WelfareBreakdown esr_closed(const ValidatedScenario& scenario) {
    return scenario.fees.is_hedge()
               ? esr_hedge_closed(scenario.market, scenario.fees.alpha(),
                                  scenario.prefs.gamma)
               : esr_mutual_closed(scenario.market, scenario.fees.phi(),
                                   scenario.prefs.gamma);
}

double attention_threshold_hedge(double alpha, double gamma) {
    check_alpha(alpha);
    check_gamma(gamma);
    return std::sqrt(1.0 + alpha / ((1.0 - alpha) * gamma));
}

AttentionCondition attention_condition_mutual(const MarketParams& market, double phi,
                                              double gamma) {
    check_gamma(gamma);
    const double nu_x = sharpe(market.mu_x, market.sigma_x);
    const double nu_f = sharpe(market.mu_f, market.sigma_f);
    AttentionCondition out;
    out.margin = 0.5 * (nu_x * nu_x - nu_f * nu_f) - gamma * phi;
    out.focus_on_fund = out.margin > 0.0;  // strict inequality
    return out;
}

double fee_indifference_alpha(const MarketParams& market, double gamma) {
    check_gamma(gamma);
    const double nu_x = sharpe(market.mu_x, market.sigma_x);
    const double nu_f = sharpe(market.mu_f, market.sigma_f);
    if (!(nu_x > nu_f) || !(nu_f > 0.0))
        throw DomainError(kModule, "nu_x",
                          "requires nu_x > nu_f > 0 for an interior solution");
    const double r2 = (nu_x / nu_f) * (nu_x / nu_f);
    const double g = gamma * (r2 - 1.0);
    const double alpha_star = g / (1.0 + g);
    if (!(alpha_star > 0.0 && alpha_star < 1.0))
        throw NumericalError(kModule, "indifference rate left (0, 1)");
    return alpha_star;
}

}  // namespace feesim

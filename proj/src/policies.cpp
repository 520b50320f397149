#include "feesim/policies.hpp"

#include <cmath>

#include "feesim/closed_form.hpp"
#include "feesim/errors.hpp"
#include "feesim/io.hpp"

namespace feesim {

namespace {
constexpr const char* kModule = "policies";
}

WealthPolicy WealthPolicy::constant_policy(double value, double bound) {
    if (!std::isfinite(value) || std::abs(value) > bound)
        throw DomainError(kModule, "pi_f", "constant exceeds the policy bound");
    WealthPolicy out;
    out.pi = [value](double, double, double, double, double) { return value; };
    out.descriptor = "wealth:constant(" + format_full(value) + ")";
    out.constant = value;
    out.bound = bound;
    return out;
}

FundPolicy FundPolicy::constant_policy(double value, double bound) {
    if (!std::isfinite(value) || std::abs(value) > bound)
        throw DomainError(kModule, "pi_x", "constant exceeds the policy bound");
    FundPolicy out;
    out.pi = [value](double, double, double) { return value; };
    out.descriptor = "fund:constant(" + format_full(value) + ")";
    out.constant = value;
    out.bound = bound;
    return out;
}

double merton_proportion(double mu, double sigma, double gamma) {
    if (!std::isfinite(sigma) || sigma <= 0.0)
        throw DomainError(kModule, "sigma", "must be positive");
    if (!std::isfinite(gamma) || gamma <= 0.0)
        throw DomainError(kModule, "gamma", "must be positive");
    return mu / (gamma * sigma * sigma);
}

FundPolicy optimal_fund_policy(const FeeScheme& scheme, const MarketParams& market,
                               double gamma) {
    double value;
    std::string label;
    if (scheme.is_hedge()) {
        const double gamma_star = effective_risk_aversion(scheme.alpha(), gamma);
        value = merton_proportion(market.mu_x, market.sigma_x, gamma_star);
        label = "fund:optimal-hedge(pi=" + format_full(value) + ")";
    } else {
        value = merton_proportion(market.mu_x, market.sigma_x, gamma);
        label = "fund:optimal-mutual(pi=" + format_full(value) + ")";
    }
    FundPolicy out;
    out.pi = [value](double, double, double) { return value; };
    out.descriptor = label;
    out.constant = value;
    return out;
}

WealthPolicy optimal_wealth_policy(const FeeScheme& scheme, const MarketParams& market,
                                   double gamma) {
    const double merton = merton_proportion(market.mu_f, market.sigma_f, gamma);
    WealthPolicy out;
    out.pi = [merton](double, double wealth, double fees, double, double) {
        if (!(wealth > 0.0))
            throw EvaluationError(kModule, "wealth policy evaluated at F <= 0");
        return (1.0 - fees / wealth) * merton;
    };
    out.descriptor = "wealth:set-aside-merton(" + scheme.name() +
                     ", m=" + format_full(merton) + ")";
    return out;
}

XiPhiPolicy heuristic_policy_xi_phi(double, double phi, const MarketParams& market,
                                    double alpha) {
    XiPhiPolicy out;
    out.pi_x = market.mu_x / (market.sigma_x * market.sigma_x);
    const double set_aside = alpha / (1.0 - alpha) * std::exp(-phi);
    out.pi_f = (1.0 - set_aside) * market.mu_f / (market.sigma_f * market.sigma_f);
    return out;
}

}  // namespace feesim

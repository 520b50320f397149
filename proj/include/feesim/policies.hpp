#pragma once

#include <functional>
#include <optional>
#include <string>

#include "feesim/market_model.hpp"

namespace feesim {

// Absolute cap on policy proportions accepted by the explicit schemes.
inline constexpr double kDefaultPolicyBound = 50.0;

// Pure mapping from wealth-side state to the proportion of wealth held in
// the private risky asset. high_water is NaN for mutual-fund trajectories.
struct WealthPolicy {
    std::function<double(double t, double wealth, double fees, double fund,
                         double high_water)>
        pi;
    std::string descriptor;
    std::optional<double> constant;
    double bound = kDefaultPolicyBound;

    double operator()(double t, double wealth, double fees, double fund,
                      double high_water) const {
        return pi(t, wealth, fees, fund, high_water);
    }

    static WealthPolicy constant_policy(double value, double bound = kDefaultPolicyBound);
};

// Pure mapping from fund-side state to the proportion of the fund invested
// in the fund's risky asset.
struct FundPolicy {
    std::function<double(double t, double fund, double high_water)> pi;
    std::string descriptor;
    std::optional<double> constant;
    double bound = kDefaultPolicyBound;

    double operator()(double t, double fund, double high_water) const {
        return pi(t, fund, high_water);
    }

    static FundPolicy constant_policy(double value, double bound = kDefaultPolicyBound);
};

// mu / (gamma sigma^2), the optimal constant risky fraction for a CRRA
// investor with constant opportunities.
double merton_proportion(double mu, double sigma, double gamma);

// The optimal constant fund proportion: mu_x / (gamma* sigma_x^2) under the
// hedge scheme with gamma* = alpha + (1-alpha) gamma, and
// mu_x / (gamma sigma_x^2) under the mutual scheme (independent of phi).
FundPolicy optimal_fund_policy(const FeeScheme& scheme, const MarketParams& market,
                               double gamma);

// The optimal wealth mapping (1 - C_t / F_t) mu_f / (gamma sigma_f^2):
// earned fees stay in the safe asset and the excess runs a Merton
// portfolio. Signals EvaluationError when evaluated at F <= 0.
WealthPolicy optimal_wealth_policy(const FeeScheme& scheme, const MarketParams& market,
                                   double gamma);

struct XiPhiPolicy {
    double pi_x = 0.0;
    double pi_f = 0.0;
};

// Log-optimal policies of the scaled problem in coordinates xi = ln(x/z),
// phi = ln(f/z): pi_x = mu_x / sigma_x^2 and
// pi_f = (1 - alpha/(1-alpha) e^{-phi}) mu_f / sigma_f^2.
XiPhiPolicy heuristic_policy_xi_phi(double xi, double phi, const MarketParams& market,
                                    double alpha);

}  // namespace feesim

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace feesim {

// Drifts, volatilities and correlation of the fund asset (x) and the
// manager's private asset (f). Rates are per year, volatilities per
// sqrt-year.
struct MarketParams {
    double mu_x = 0.0;
    double sigma_x = 0.0;
    double mu_f = 0.0;
    double sigma_f = 0.0;
    double rho = 0.0;
};

// Compensation scheme: either a performance fee on increases of the fund's
// high-water mark (hedge) or a proportional management fee (mutual). The
// two schemes exclude each other. rate == 0 is accepted as the degenerate
// no-fee case and flagged by ValidatedScenario::degenerate_no_fee.
struct FeeScheme {
    enum class Kind { Hedge, Mutual };

    Kind kind = Kind::Hedge;
    double rate = 0.0;  // alpha for hedge, phi for mutual

    static FeeScheme hedge(double alpha) { return {Kind::Hedge, alpha}; }
    static FeeScheme mutual(double phi) { return {Kind::Mutual, phi}; }

    bool is_hedge() const { return kind == Kind::Hedge; }
    bool is_mutual() const { return kind == Kind::Mutual; }
    double alpha() const { return rate; }
    double phi() const { return rate; }
    bool no_fee() const { return rate == 0.0; }

    std::string name() const { return is_hedge() ? "hedge" : "mutual"; }
};

// Constant relative risk aversion; gamma = 1 is the log manager.
struct PreferenceParams {
    double gamma = 1.0;
};

struct SimConfig {
    double horizon_T = 200.0;  // years
    double dt = 0.01;          // step, years
    std::size_t n_paths = 10000;
    std::uint64_t seed = 42;
    double x0 = 1.0;  // initial fund value
    double f0 = 1.0;  // initial private wealth
};

// Frozen, fully validated scenario with all derived quantities precomputed.
// Instances are immutable after construction and safe to share across
// threads. Only validate() should produce them.
struct ValidatedScenario {
    MarketParams market;
    FeeScheme fees;
    PreferenceParams prefs;
    SimConfig sim;

    double nu_x = 0.0;  // mu_x / sigma_x
    double nu_f = 0.0;  // mu_f / sigma_f
    double p = 0.0;     // 1 - gamma
    std::size_t n_steps = 0;
    bool proven_regime = true;    // gamma <= 1
    bool degenerate_no_fee = false;
};

// Sharpe ratio mu / sigma. DomainError("sigma") unless sigma > 0.
double sharpe(double mu, double sigma);

// Validates all inputs and freezes the derived quantities. gamma > 1 is
// accepted with proven_regime = false rather than rejected; alpha == 0 and
// phi == 0 are accepted as degenerate no-fee cases. The step count is
// round(horizon_T / dt) and the grid must tile the horizon to within a
// 1e-9 relative tolerance.
ValidatedScenario validate(const MarketParams& market, const FeeScheme& fees,
                           const PreferenceParams& prefs, const SimConfig& sim);

}  // namespace feesim

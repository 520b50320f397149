#include "feesim/market_model.hpp"

#include <cmath>

#include "feesim/errors.hpp"

namespace feesim {

namespace {
constexpr const char* kModule = "market_model";

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) throw DomainError(kModule, field, "must be finite");
}
}  // namespace

double sharpe(double mu, double sigma) {
    require_finite(mu, "mu");
    if (!std::isfinite(sigma) || sigma <= 0.0)
        throw DomainError(kModule, "sigma", "must be positive");
    return mu / sigma;
}

ValidatedScenario validate(const MarketParams& market, const FeeScheme& fees,
                           const PreferenceParams& prefs, const SimConfig& sim) {
    require_finite(market.mu_x, "mu_x");
    require_finite(market.mu_f, "mu_f");
    if (!std::isfinite(market.sigma_x) || market.sigma_x <= 0.0)
        throw DomainError(kModule, "sigma_x", "must be positive");
    if (!std::isfinite(market.sigma_f) || market.sigma_f <= 0.0)
        throw DomainError(kModule, "sigma_f", "must be positive");
    if (!std::isfinite(market.rho) || std::abs(market.rho) > 1.0)
        throw DomainError(kModule, "rho", "must lie in [-1, 1]");

    if (fees.is_hedge()) {
        // alpha == 0 is the degenerate no-fee case; otherwise 0 < alpha < 1.
        if (!std::isfinite(fees.rate) || fees.rate < 0.0 || fees.rate >= 1.0)
            throw DomainError(kModule, "alpha", "must lie in (0, 1), or be exactly 0");
    } else {
        if (!std::isfinite(fees.rate) || fees.rate < 0.0)
            throw DomainError(kModule, "phi", "must be positive, or exactly 0");
    }

    if (!std::isfinite(prefs.gamma) || prefs.gamma <= 0.0)
        throw DomainError(kModule, "gamma", "must be positive");

    if (!std::isfinite(sim.horizon_T) || sim.horizon_T <= 0.0)
        throw DomainError(kModule, "horizon_T", "must be positive");
    if (!std::isfinite(sim.dt) || sim.dt <= 0.0)
        throw DomainError(kModule, "dt", "must be positive");
    if (sim.n_paths < 1)
        throw DomainError(kModule, "n_paths", "must be at least 1");
    if (!std::isfinite(sim.x0) || sim.x0 <= 0.0)
        throw DomainError(kModule, "x0", "must be positive");
    if (!std::isfinite(sim.f0) || sim.f0 <= 0.0)
        throw DomainError(kModule, "f0", "must be positive");

    const double ratio = sim.horizon_T / sim.dt;
    const auto n_steps = static_cast<long long>(std::llround(ratio));
    if (n_steps < 1 ||
        std::abs(static_cast<double>(n_steps) * sim.dt - sim.horizon_T) >
            1e-9 * std::max(1.0, sim.horizon_T))
        throw DomainError(kModule, "dt", "grid does not tile the horizon");

    ValidatedScenario out;
    out.market = market;
    out.fees = fees;
    out.prefs = prefs;
    out.sim = sim;
    out.nu_x = sharpe(market.mu_x, market.sigma_x);
    out.nu_f = sharpe(market.mu_f, market.sigma_f);
    out.p = 1.0 - prefs.gamma;
    out.n_steps = static_cast<std::size_t>(n_steps);
    out.proven_regime = prefs.gamma <= 1.0;
    out.degenerate_no_fee = fees.no_fee();
    return out;
}

}  // namespace feesim

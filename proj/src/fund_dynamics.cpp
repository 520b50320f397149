#include "feesim/fund_dynamics.hpp"

#include <cmath>

#include "feesim/errors.hpp"

namespace feesim {

namespace {
constexpr const char* kModule = "fund_dynamics";
}

FundTrajectory simulate_hedge_fund(const ReturnGrid& r, double alpha, double x0) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw DomainError(kModule, "alpha", "must lie in [0, 1)");
    if (!(x0 > 0.0)) throw DomainError(kModule, "x0", "must be positive");

    const std::size_t n_paths = r.n_paths();
    const std::size_t n_nodes = r.values.n_nodes();

    FundTrajectory out;
    out.scheme = FeeScheme::hedge(alpha);
    out.dt = r.dt;
    out.x0 = x0;
    out.X = PathGrid(n_paths, n_nodes);
    out.X_star = PathGrid(n_paths, n_nodes);
    out.C = PathGrid(n_paths, n_nodes);

    const double fee_factor = alpha / (1.0 - alpha);
    for (std::size_t p = 0; p < n_paths; ++p) {
        auto rr = r.values.path(p);
        auto x = out.X.path(p);
        auto xs = out.X_star.path(p);
        auto c = out.C.path(p);
        double rmax = rr[0];
        double xmax = 0.0;
        for (std::size_t k = 0; k < n_nodes; ++k) {
            if (rr[k] > rmax) rmax = rr[k];
            const double xk = x0 * std::exp(rr[k] - alpha * rmax);
            if (k == 0 || xk > xmax) xmax = xk;
            x[k] = xk;
            xs[k] = xmax;
            c[k] = fee_factor * (xmax - x0);
        }
    }
    return out;
}

FundTrajectory simulate_hedge_fund_euler(double pi_x, const ValidatedScenario& scenario,
                                         const PathBatch& batch) {
    if (!std::isfinite(pi_x)) throw DomainError(kModule, "pi_x", "must be finite");
    if (!scenario.fees.is_hedge())
        throw DomainError(kModule, "fees", "hedge scheme required");

    const double alpha = scenario.fees.alpha();
    const double x0 = scenario.sim.x0;
    const double mu = scenario.market.mu_x;
    const double sigma = scenario.market.sigma_x;
    const double dt = batch.dt;
    const std::size_t n_paths = batch.n_paths;
    const std::size_t n_steps = batch.n_steps;

    FundTrajectory out;
    out.scheme = scenario.fees;
    out.dt = dt;
    out.x0 = x0;
    out.X = PathGrid(n_paths, n_steps + 1);
    out.X_star = PathGrid(n_paths, n_steps + 1);
    out.C = PathGrid(n_paths, n_steps + 1);

    const double fee_factor = alpha / (1.0 - alpha);
    for (std::size_t p = 0; p < n_paths; ++p) {
        auto w = batch.dW_x.path(p);
        auto x = out.X.path(p);
        auto xs = out.X_star.path(p);
        auto c = out.C.path(p);
        x[0] = x0;
        xs[0] = x0;  // the fund starts at its high-water mark
        c[0] = 0.0;
        for (std::size_t k = 0; k < n_steps; ++k) {
            const double pre = x[k] * (1.0 + pi_x * (mu * dt + sigma * w[k]));
            if (pre <= 0.0)
                throw StabilityError(kModule, batch.first_path + p, k,
                                     "fund value left the positive domain; "
                                     "reduce dt or the proportion");
            if (pre > xs[k]) {
                x[k + 1] = xs[k] + (1.0 - alpha) * (pre - xs[k]);
                xs[k + 1] = x[k + 1];
            } else {
                x[k + 1] = pre;
                xs[k + 1] = xs[k];
            }
            c[k + 1] = c[k] + fee_factor * (xs[k + 1] - xs[k]);
        }
    }
    return out;
}

FundTrajectory simulate_mutual_fund(const ReturnGrid& r, double phi, double x0) {
    if (!(phi >= 0.0) || !std::isfinite(phi))
        throw DomainError(kModule, "phi", "must be nonnegative");
    if (!(x0 > 0.0)) throw DomainError(kModule, "x0", "must be positive");

    const std::size_t n_paths = r.n_paths();
    const std::size_t n_nodes = r.values.n_nodes();
    const double dt = r.dt;

    FundTrajectory out;
    out.scheme = FeeScheme::mutual(phi);
    out.dt = dt;
    out.x0 = x0;
    out.X = PathGrid(n_paths, n_nodes);
    out.C = PathGrid(n_paths, n_nodes);

    for (std::size_t p = 0; p < n_paths; ++p) {
        auto rr = r.values.path(p);
        auto x = out.X.path(p);
        auto c = out.C.path(p);
        x[0] = x0 * std::exp(rr[0]);
        c[0] = 0.0;
        for (std::size_t k = 1; k < n_nodes; ++k) {
            const double t = static_cast<double>(k) * dt;
            x[k] = x0 * std::exp(rr[k] - phi * t);
            c[k] = c[k - 1] + phi * 0.5 * (x[k - 1] + x[k]) * dt;
        }
    }
    return out;
}

}  // namespace feesim

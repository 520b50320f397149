#include <doctest.h>

#include <cmath>

#include "feesim/errors.hpp"
#include "feesim/fund_dynamics.hpp"
#include "feesim/wealth_dynamics.hpp"
#include "test_helpers.hpp"

using namespace feesim;

namespace {

FundTrajectory hedge_fund_on(const ValidatedScenario& scenario, const PathBatch& batch,
                             double pi_x) {
    const auto r = cumulative_return(pi_x, scenario.market.mu_x,
                                     scenario.market.sigma_x, batch, Asset::Fund);
    return simulate_hedge_fund(r, scenario.fees.alpha(), scenario.sim.x0);
}

}  // namespace

TEST_CASE("safe-asset-only wealth is initial wealth plus fees") {
    const auto scenario = test::headline_hedge(0.0, 21, 32, 2.0);
    const auto batch = generate_increments(scenario);
    const auto fund = hedge_fund_on(scenario, batch, 3.0);
    const auto wealth =
        simulate_wealth_feedback(WealthPolicy::constant_policy(0.0), fund, scenario, batch);
    const std::size_t last = wealth.F.n_nodes() - 1;
    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        const double want = 1.0 + fund.C(p, last);
        CHECK(std::abs(wealth.F(p, last) - want) <= 1e-13 * want);
    }
}

TEST_CASE("deterministic compounding without fees") {
    // alpha = 0 so fees vanish; zero increments so sigma_f contributes nothing.
    const std::size_t n = 50;
    const auto scenario = validate({0.08, 0.16, 0.05, 0.10, 0.0}, FeeScheme::hedge(0.0),
                                   {1.0}, {1.0, 1.0 / n, 1, 5, 1.0, 1.0});
    const auto batch = test::zero_batch(1, n, 1.0 / n);
    const auto fund = hedge_fund_on(scenario, batch, 1.0);
    const auto wealth =
        simulate_wealth_feedback(WealthPolicy::constant_policy(2.0), fund, scenario, batch);
    const double factor = 1.0 + 2.0 * 0.05 / static_cast<double>(n);
    CHECK(wealth.F(0, n) ==
          doctest::Approx(std::pow(factor, n)).epsilon(1e-12));
}

TEST_CASE("one hand-evaluated feedback step") {
    const auto scenario = validate({0.08, 0.16, 0.0, 1.0, 0.0}, FeeScheme::hedge(0.2),
                                   {1.0}, {1.0, 1.0, 1, 5, 1.0, 1.0});
    auto batch = test::zero_batch(1, 1, 1.0);
    batch.dW_f(0, 0) = 0.2;

    FundTrajectory fees;
    fees.scheme = scenario.fees;
    fees.dt = 1.0;
    fees.x0 = 1.0;
    fees.X = PathGrid(1, 2, 1.0);
    fees.X_star = PathGrid(1, 2, 1.0);
    fees.C = PathGrid(1, 2, 0.0);
    fees.C(0, 1) = 0.03;

    const auto wealth =
        simulate_wealth_feedback(WealthPolicy::constant_policy(0.5), fees, scenario, batch);
    CHECK(wealth.F(0, 1) == doctest::Approx(1.13).epsilon(1e-15));
}

TEST_CASE("feedback scheme reports instability and bound violations") {
    const auto scenario = validate({0.08, 0.16, -3.0, 1.0, 0.0}, FeeScheme::hedge(0.0),
                                   {1.0}, {1.0, 0.5, 1, 5, 1.0, 1.0});
    const auto batch = test::zero_batch(1, 2, 0.5);
    const auto fund = hedge_fund_on(scenario, batch, 0.0);
    try {
        simulate_wealth_feedback(WealthPolicy::constant_policy(1.0), fund, scenario,
                                 batch);
        FAIL("expected StabilityError");
    } catch (const StabilityError& e) {
        CHECK(e.path() == 0);
        CHECK(e.step() == 0);
    }

    WealthPolicy wild;
    wild.pi = [](double, double, double, double, double) { return 100.0; };
    wild.descriptor = "wealth:test-unbounded";
    CHECK_THROWS_AS(simulate_wealth_feedback(wild, fund, scenario, batch), DomainError);
    CHECK_THROWS_AS(WealthPolicy::constant_policy(51.0), DomainError);
}

TEST_CASE("optimal set-aside wealth") {
    const auto scenario = test::headline_hedge(0.4, 33, 48, 2.0);
    const auto batch = generate_increments(scenario);
    const auto fund = hedge_fund_on(scenario, batch, 3.125);
    const auto wealth = simulate_wealth_optimal(fund, scenario, batch);

    SUBCASE("excess wealth is the lognormal factor, exactly") {
        const double m = merton_proportion(0.04, 0.10, 1.0);
        const auto g = cumulative_return(m, 0.04, 0.10, batch, Asset::Private);
        std::size_t bad = 0;
        for (std::size_t p = 0; p < batch.n_paths; ++p)
            for (std::size_t k = 0; k < wealth.F.n_nodes(); ++k) {
                if (wealth.excess(p, k) != std::exp(g.values(p, k))) ++bad;
                if (wealth.F(p, k) != wealth.excess(p, k) + fund.C(p, k)) ++bad;
                if (!(wealth.excess(p, k) > 0.0)) ++bad;
            }
        CHECK(bad == 0);
    }
    SUBCASE("excess wealth does not depend on the fee stream") {
        const auto other_fund = hedge_fund_on(scenario, batch, 1.0);
        const auto other = simulate_wealth_optimal(other_fund, scenario, batch);
        CHECK(other.excess.data() == wealth.excess.data());

        const auto r = cumulative_return(3.125, scenario.market.mu_x,
                                         scenario.market.sigma_x, batch, Asset::Fund);
        const auto mutual_fund = simulate_mutual_fund(r, 0.01, 1.0);
        const auto mutual_scenario =
            validate(scenario.market, FeeScheme::mutual(0.01), scenario.prefs,
                     scenario.sim);
        const auto mutual = simulate_wealth_optimal(mutual_fund, mutual_scenario, batch);
        CHECK(mutual.excess.data() == wealth.excess.data());
    }
}

TEST_CASE("flat private drift keeps excess wealth constant") {
    const auto scenario = validate({0.08, 0.16, 0.0, 0.10, 0.0}, FeeScheme::hedge(0.2),
                                   {1.0}, {1.0, 0.25, 2, 5, 1.0, 1.0});
    const auto batch = generate_increments(scenario);
    const auto fund = hedge_fund_on(scenario, batch, 2.0);
    const auto wealth = simulate_wealth_optimal(fund, scenario, batch);
    for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t k = 0; k <= 4; ++k) CHECK(wealth.excess(p, k) == 1.0);
}

TEST_CASE("forced-zero private noise gives the squared-Sharpe drift") {
    // With gamma = 1 the excess grows at nu_f^2 / 2 on a zero-noise path.
    const std::size_t n = 40;
    const auto scenario = validate({0.08, 0.16, 0.04, 0.10, 0.0}, FeeScheme::hedge(0.2),
                                   {1.0}, {2.0, 2.0 / n, 1, 5, 1.0, 1.0});
    const auto batch = test::zero_batch(1, n, 2.0 / n);
    const auto fund = hedge_fund_on(scenario, batch, 0.0);
    const auto wealth = simulate_wealth_optimal(fund, scenario, batch);
    const double nu_f2 = 0.4 * 0.4;
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = 2.0 * static_cast<double>(k) / n;
        CHECK(std::log(wealth.excess(0, k)) ==
              doctest::Approx(0.5 * nu_f2 * t).epsilon(1e-11));
    }
}

TEST_CASE("fee inflow integral") {
    SUBCASE("flat private return sums the increments") {
        const auto r = test::grid_from(1.0, {{0.0, 0.0, 0.0}});
        PathGrid dc(1, 2, 0.0);
        dc(0, 0) = 0.4;
        dc(0, 1) = 0.25;
        const auto out = fee_inflow_integral(r, dc);
        CHECK(out[0] == doctest::Approx(0.65).epsilon(1e-15));
    }
    SUBCASE("a lump fee at time zero compounds to the horizon") {
        const auto r = test::grid_from(1.0, {{0.0, 0.04, 0.1}});
        PathGrid dc(1, 2, 0.0);
        dc(0, 0) = 1.0;
        const auto out = fee_inflow_integral(r, dc);
        CHECK(out[0] == doctest::Approx(std::exp(0.1)).epsilon(1e-14));
    }
    SUBCASE("no fees, no inflow") {
        const auto r = test::grid_from(1.0, {{0.0, 0.04, 0.1}});
        PathGrid dc(1, 2, 0.0);
        CHECK(fee_inflow_integral(r, dc)[0] == 0.0);
    }
}

TEST_CASE("two discretizations of terminal wealth agree as the step shrinks") {
    // Feedback euler versus F0 e^{R} plus the compounded fee inflow.
    const auto scenario = test::headline_hedge(0.2, 9, 64, 1.0, 0.00125);
    const auto fine = generate_increments(scenario);

    auto gap = [&](const PathBatch& batch) {
        SimConfig sim = scenario.sim;
        sim.dt = batch.dt;
        const auto sub = validate(scenario.market, scenario.fees, scenario.prefs, sim);
        const auto fund = hedge_fund_on(sub, batch, 3.0);
        const double pi_f = 2.0;
        const auto wealth = simulate_wealth_feedback(
            WealthPolicy::constant_policy(pi_f), fund, sub, batch);
        const auto r_f = cumulative_return(pi_f, sub.market.mu_f, sub.market.sigma_f,
                                           batch, Asset::Private);
        const auto inflow = fee_inflow_integral(r_f, fee_increments_of(fund.C));
        const std::size_t last = wealth.F.n_nodes() - 1;
        double worst = 0.0;
        for (std::size_t p = 0; p < batch.n_paths; ++p) {
            const double alt = std::exp(r_f.values(p, last)) + inflow[p];
            worst = std::max(worst,
                             std::abs(wealth.F(p, last) - alt) / std::abs(alt));
        }
        return worst;
    };

    const double coarse = gap(test::coarsen(fine, 4));
    const double fine_gap = gap(fine);
    CHECK(fine_gap < coarse);
    CHECK(fine_gap < 0.02);
}

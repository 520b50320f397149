#include <doctest.h>

#include <cmath>

#include "feesim/errors.hpp"
#include "feesim/fund_dynamics.hpp"
#include "test_helpers.hpp"

using namespace feesim;

TEST_CASE("hedge transform on a hand-evaluated grid") {
    const auto r = test::grid_from(1.0, {{0.0, 0.1, 0.05}});
    const auto fund = simulate_hedge_fund(r, 0.2, 1.0);

    CHECK(fund.X(0, 0) == 1.0);
    CHECK(fund.X(0, 1) == doctest::Approx(std::exp(0.08)).epsilon(1e-14));
    CHECK(fund.X(0, 2) == doctest::Approx(std::exp(0.03)).epsilon(1e-14));

    CHECK(fund.X_star(0, 0) == 1.0);
    CHECK(fund.X_star(0, 1) == doctest::Approx(std::exp(0.08)).epsilon(1e-14));
    CHECK(fund.X_star(0, 2) == doctest::Approx(std::exp(0.08)).epsilon(1e-14));

    const double fee = 0.25 * (std::exp(0.08) - 1.0);
    CHECK(fund.C(0, 0) == 0.0);
    CHECK(fund.C(0, 1) == doctest::Approx(fee).epsilon(1e-14));
    CHECK(fund.C(0, 2) == doctest::Approx(fee).epsilon(1e-14));
}

TEST_CASE("no-fee hedge fund reduces to the exponential of the return") {
    const auto r = test::grid_from(1.0, {{0.0, 0.2, -0.1, 0.3}});
    const auto fund = simulate_hedge_fund(r, 0.0, 2.0);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(fund.X(0, k) == doctest::Approx(2.0 * std::exp(r.values(0, k))).epsilon(1e-15));
        CHECK(fund.C(0, k) == 0.0);
    }
}

TEST_CASE("nondecreasing returns keep the fund at its high-water mark") {
    const auto r = test::grid_from(1.0, {{0.0, 0.05, 0.12, 0.3}});
    const auto fund = simulate_hedge_fund(r, 0.25, 1.0);
    for (std::size_t k = 0; k < 4; ++k) {
        CHECK(fund.X(0, k) == fund.X_star(0, k));
        CHECK(fund.X(0, k) ==
              doctest::Approx(std::exp(0.75 * r.values(0, k))).epsilon(1e-14));
    }
}

TEST_CASE("hedge transform invariants on simulated paths") {
    const auto scenario = test::headline_hedge(0.3, 5, 64, 2.0);
    const auto batch = generate_increments(scenario);
    const auto r = cumulative_return(3.0, scenario.market.mu_x, scenario.market.sigma_x,
                                     batch, Asset::Fund);
    const auto fund = simulate_hedge_fund(r, 0.2, scenario.sim.x0);

    SUBCASE("high-water mark is the running maximum of X, exactly") {
        std::size_t mismatches = 0;
        for (std::size_t p = 0; p < fund.X.n_paths(); ++p) {
            double m = fund.X(p, 0);
            for (std::size_t k = 0; k < fund.X.n_nodes(); ++k) {
                m = std::max(m, fund.X(p, k));
                if (fund.X_star(p, k) != m) ++mismatches;
            }
        }
        CHECK(mismatches == 0);
    }
    SUBCASE("stored mark agrees with the log-space transform to round-off") {
        const auto r_star = running_max(r);
        for (std::size_t p = 0; p < 4; ++p)
            for (std::size_t k = 0; k < fund.X.n_nodes(); ++k) {
                const double formula = std::exp(0.8 * r_star.values(p, k));
                CHECK(fund.X_star(p, k) ==
                      doctest::Approx(formula).epsilon(1e-13));
            }
    }
    SUBCASE("fee accounting is exact and nondecreasing") {
        std::size_t bad = 0;
        for (std::size_t p = 0; p < fund.X.n_paths(); ++p) {
            double prev = 0.0;
            for (std::size_t k = 0; k < fund.C.n_nodes(); ++k) {
                if (fund.C(p, k) != 0.25 * (fund.X_star(p, k) - 1.0)) ++bad;
                if (fund.C(p, k) < prev) ++bad;
                prev = fund.C(p, k);
            }
        }
        CHECK(bad == 0);
    }
    SUBCASE("fund value is positive everywhere") {
        for (double v : fund.X.data()) CHECK(v > 0.0);
    }
    SUBCASE("a larger fee rate never increases the fund value") {
        const auto low = simulate_hedge_fund(r, 0.1, 1.0);
        const auto high = simulate_hedge_fund(r, 0.3, 1.0);
        std::size_t bad = 0;
        for (std::size_t i = 0; i < low.X.data().size(); ++i)
            if (low.X.data()[i] < high.X.data()[i]) ++bad;
        CHECK(bad == 0);
    }
}

TEST_CASE("hedge euler scheme splits the above-mark increment") {
    // sigma contributes nothing on a zero-increment path; mu pi dt = 0.1.
    const auto scenario = validate({0.1, 0.2, 0.04, 0.10, 0.0}, FeeScheme::hedge(0.2),
                                   {1.0}, {1.0, 1.0, 1, 3, 1.0, 1.0});
    const auto batch = test::zero_batch(1, 1, 1.0);
    const auto fund = simulate_hedge_fund_euler(1.0, scenario, batch);
    CHECK(fund.X(0, 1) == doctest::Approx(1.08).epsilon(1e-15));
    CHECK(fund.X_star(0, 1) == doctest::Approx(1.08).epsilon(1e-15));
    CHECK(fund.C(0, 1) == doctest::Approx(0.02).epsilon(1e-13));
}

TEST_CASE("paths below the mark accrue no fees") {
    const auto scenario = validate({-0.05, 0.2, 0.04, 0.10, 0.0}, FeeScheme::hedge(0.2),
                                   {1.0}, {1.0, 0.25, 1, 3, 1.0, 1.0});
    const auto batch = test::zero_batch(1, 4, 0.25);
    const auto fund = simulate_hedge_fund_euler(1.0, scenario, batch);
    for (std::size_t k = 0; k <= 4; ++k) {
        CHECK(fund.C(0, k) == 0.0);
        CHECK(fund.X_star(0, k) == 1.0);
    }
}

TEST_CASE("euler scheme reports the first unstable step") {
    const auto scenario = validate({-3.0, 0.2, 0.04, 0.10, 0.0}, FeeScheme::hedge(0.2),
                                   {1.0}, {1.0, 0.5, 1, 3, 1.0, 1.0});
    const auto batch = test::zero_batch(1, 2, 0.5);
    try {
        simulate_hedge_fund_euler(1.0, scenario, batch);
        FAIL("expected StabilityError");
    } catch (const StabilityError& e) {
        CHECK(e.path() == 0);
        CHECK(e.step() == 0);
    }
}

TEST_CASE("euler converges to the transform as the step shrinks") {
    const auto scenario = test::headline_hedge(0.0, 17, 50, 1.0, 0.000625);
    const auto fine = generate_increments(scenario);
    const auto r_fine = cumulative_return(3.125, 0.08, 0.16, fine, Asset::Fund);
    const auto reference = simulate_hedge_fund(r_fine, 0.2, 1.0);
    const std::size_t last_fine = reference.X.n_nodes() - 1;

    auto max_rel_err = [&](const PathBatch& batch) {
        SimConfig sim = scenario.sim;
        sim.dt = batch.dt;
        const auto sub = validate(scenario.market, scenario.fees, scenario.prefs, sim);
        const auto euler = simulate_hedge_fund_euler(3.125, sub, batch);
        const std::size_t last = euler.X.n_nodes() - 1;
        double worst = 0.0;
        for (std::size_t p = 0; p < batch.n_paths; ++p) {
            const double ref = reference.X(p, last_fine);
            worst = std::max(worst, std::abs(euler.X(p, last) - ref) / ref);
        }
        return worst;
    };

    const double e4 = max_rel_err(test::coarsen(fine, 4));
    const double e2 = max_rel_err(test::coarsen(fine, 2));
    const double e1 = max_rel_err(fine);
    CHECK(e1 < e2);
    CHECK(e2 < e4);
    CHECK(e1 < 0.02);
}

TEST_CASE("mutual fund against the closed-form fee integral") {
    const std::size_t n = 100;
    const double dt = 1.0 / static_cast<double>(n);
    std::vector<std::vector<double>> flat{std::vector<double>(n + 1, 0.0)};
    const auto r = test::grid_from(dt, flat);
    const auto fund = simulate_mutual_fund(r, 0.01, 1.0);

    CHECK(fund.X(0, n) == doctest::Approx(std::exp(-0.01)).epsilon(1e-14));
    // phi * integral of exp(-phi s) over [0, 1] = 1 - exp(-phi).
    CHECK(fund.C(0, n) == doctest::Approx(1.0 - std::exp(-0.01)).epsilon(1e-8));
    CHECK_FALSE(fund.has_high_water_mark());
}

TEST_CASE("mutual fund degenerate cases") {
    SUBCASE("zero fee rate") {
        const auto r = test::grid_from(0.5, {{0.0, 0.1, 0.3}});
        const auto fund = simulate_mutual_fund(r, 0.0, 1.5);
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(fund.X(0, k) ==
                  doctest::Approx(1.5 * std::exp(r.values(0, k))).epsilon(1e-15));
            CHECK(fund.C(0, k) == 0.0);
        }
    }
    SUBCASE("deterministic growth at rate mu - phi") {
        const std::size_t n = 200;
        const double dt = 2.0 / static_cast<double>(n);
        auto batch = test::zero_batch(1, n, dt);
        const auto r = cumulative_return(1.0, 0.07, 0.0, batch, Asset::Fund);
        const auto fund = simulate_mutual_fund(r, 0.02, 1.0);
        CHECK(std::log(fund.X(0, n)) ==
              doctest::Approx((0.07 - 0.02) * 2.0).epsilon(1e-11));
    }
}

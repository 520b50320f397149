#include <doctest.h>

#include "feesim/errors.hpp"
#include "feesim/market_model.hpp"

using namespace feesim;

namespace {
const MarketParams kMarket{0.08, 0.16, 0.04, 0.10, 0.0};
const SimConfig kSim{10.0, 0.01, 100, 7, 1.0, 1.0};
}  // namespace

TEST_CASE("sharpe ratio") {
    CHECK(sharpe(0.08, 0.16) == 0.5);
    CHECK(sharpe(0.0, 0.2) == 0.0);
    CHECK(sharpe(0.04, 0.10) == doctest::Approx(0.4).epsilon(1e-15));
    CHECK_THROWS_AS(sharpe(0.08, 0.0), DomainError);
    CHECK_THROWS_AS(sharpe(0.08, -0.1), DomainError);
}

TEST_CASE("validate accepts in-range inputs and derives quantities") {
    const auto s = validate(kMarket, FeeScheme::hedge(0.2), {1.0}, kSim);
    CHECK(s.proven_regime);
    CHECK_FALSE(s.degenerate_no_fee);
    CHECK(s.nu_x == sharpe(kMarket.mu_x, kMarket.sigma_x));
    CHECK(s.nu_f == sharpe(kMarket.mu_f, kMarket.sigma_f));
    CHECK(s.p == 0.0);
    CHECK(s.n_steps == 1000);
}

TEST_CASE("validate rejects invalid fields by name") {
    MarketParams bad = kMarket;
    bad.sigma_x = -0.1;
    try {
        validate(bad, FeeScheme::hedge(0.2), {1.0}, kSim);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.field() == "sigma_x");
    }

    bad = kMarket;
    bad.rho = 1.5;
    CHECK_THROWS_AS(validate(bad, FeeScheme::hedge(0.2), {1.0}, kSim), DomainError);

    CHECK_THROWS_AS(validate(kMarket, FeeScheme::hedge(1.0), {1.0}, kSim), DomainError);
    CHECK_THROWS_AS(validate(kMarket, FeeScheme::hedge(-0.2), {1.0}, kSim), DomainError);
    CHECK_THROWS_AS(validate(kMarket, FeeScheme::mutual(-0.01), {1.0}, kSim),
                    DomainError);
    CHECK_THROWS_AS(validate(kMarket, FeeScheme::hedge(0.2), {0.0}, kSim), DomainError);

    SimConfig sim = kSim;
    sim.dt = 0.0;
    CHECK_THROWS_AS(validate(kMarket, FeeScheme::hedge(0.2), {1.0}, sim), DomainError);
    sim = kSim;
    sim.x0 = 0.0;
    CHECK_THROWS_AS(validate(kMarket, FeeScheme::hedge(0.2), {1.0}, sim), DomainError);
    sim = kSim;
    sim.n_paths = 0;
    CHECK_THROWS_AS(validate(kMarket, FeeScheme::hedge(0.2), {1.0}, sim), DomainError);
}

TEST_CASE("grid must tile the horizon") {
    SimConfig sim = kSim;
    sim.horizon_T = 1.0;
    sim.dt = 0.3;
    try {
        validate(kMarket, FeeScheme::hedge(0.2), {1.0}, sim);
        FAIL("expected DomainError");
    } catch (const DomainError& e) {
        CHECK(e.field() == "dt");
    }
    // 200 / 0.01 carries representation error but tiles within tolerance.
    sim.horizon_T = 200.0;
    sim.dt = 0.01;
    CHECK(validate(kMarket, FeeScheme::hedge(0.2), {1.0}, sim).n_steps == 20000);
}

TEST_CASE("gamma above one is flagged, not rejected") {
    const auto s = validate(kMarket, FeeScheme::hedge(0.2), {1.2}, kSim);
    CHECK_FALSE(s.proven_regime);
    CHECK(s.p == doctest::Approx(-0.2).epsilon(1e-15));
}

TEST_CASE("degenerate no-fee schemes are accepted and flagged") {
    CHECK(validate(kMarket, FeeScheme::hedge(0.0), {1.0}, kSim).degenerate_no_fee);
    CHECK(validate(kMarket, FeeScheme::mutual(0.0), {1.0}, kSim).degenerate_no_fee);
    CHECK_FALSE(validate(kMarket, FeeScheme::mutual(0.01), {1.0}, kSim).degenerate_no_fee);
}

TEST_CASE("validate is idempotent") {
    const auto s = validate(kMarket, FeeScheme::mutual(0.01), {0.5}, kSim);
    const auto t = validate(s.market, s.fees, s.prefs, s.sim);
    CHECK(t.nu_x == s.nu_x);
    CHECK(t.nu_f == s.nu_f);
    CHECK(t.p == s.p);
    CHECK(t.n_steps == s.n_steps);
    CHECK(t.proven_regime == s.proven_regime);
    CHECK(t.degenerate_no_fee == s.degenerate_no_fee);
    CHECK(t.market.rho == s.market.rho);
    CHECK(t.sim.seed == s.sim.seed);
}

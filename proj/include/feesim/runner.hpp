#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "feesim/market_model.hpp"

namespace feesim {

// Wealth-side rule used by the large terminal-value simulations. SafeOnly
// keeps all wealth in the safe asset (F_T = f0 + C_T exactly);
// SetAsideOptimal runs the exact decomposition F_T = f0 exp(G_T) + C_T with
// the Merton constant on the excess.
struct WealthRule {
    enum class Kind { SetAsideOptimal, SafeOnly };
    Kind kind = Kind::SetAsideOptimal;

    static WealthRule optimal() { return {Kind::SetAsideOptimal}; }
    static WealthRule safe_only() { return {Kind::SafeOnly}; }
    std::string descriptor() const {
        return kind == Kind::SetAsideOptimal ? "wealth:set-aside-merton"
                                             : "wealth:safe-only";
    }
};

// Terminal values for a family of constant fund proportions simulated on
// one shared set of increments (common random numbers), candidate-major.
// The checksum fingerprints every increment consumed, in path order, so two
// runs (or two grid cells) can assert they drew identical batches.
struct TerminalMulti {
    std::size_t n_candidates = 0;
    std::size_t n_paths = 0;
    std::vector<double> wealth;  // [candidate * n_paths + path]
    std::vector<double> fund;    // terminal fund values, same layout
    std::uint64_t increments_checksum = 0;

    std::span<const double> wealth_row(std::size_t c) const {
        return {wealth.data() + c * n_paths, n_paths};
    }
    std::span<const double> fund_row(std::size_t c) const {
        return {fund.data() + c * n_paths, n_paths};
    }
};

// Streaming exact-transform simulation of terminal values: O(1) state per
// (path, candidate), no grids materialized. Bitwise deterministic in
// (scenario, candidates) under any thread count.
TerminalMulti simulate_terminal_multi(const ValidatedScenario& scenario,
                                      std::span<const double> pi_x_candidates,
                                      const WealthRule& rule, int n_threads = 0);

struct TerminalBatch {
    std::vector<double> wealth;
    std::vector<double> fund;
    std::uint64_t increments_checksum = 0;
};

TerminalBatch simulate_terminal(const ValidatedScenario& scenario, double pi_x,
                                const WealthRule& rule, int n_threads = 0);

}  // namespace feesim

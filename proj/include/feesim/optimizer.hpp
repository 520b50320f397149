#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "feesim/market_model.hpp"
#include "feesim/runner.hpp"
#include "feesim/welfare.hpp"

namespace feesim {

// Grid search over constant fund proportions under common random numbers.
// Every candidate consumes the identical increments (fingerprinted by
// batch_checksum); noise ties break toward the smaller proportion.
struct GridSearchResult {
    std::vector<double> pi_grid;
    std::vector<EsrEstimate> estimates;
    double argmax_pi = 0.0;
    double predicted_pi = 0.0;  // the optimal constant from the closed form
    std::uint64_t seed = 0;
    std::uint64_t batch_checksum = 0;
    std::string wealth_rule;
};

// The default wealth rule is pi_f = 0, which isolates the fund branch
// through fees alone; pass WealthRule::optimal() for the set-aside policy.
GridSearchResult grid_search_fund(const ValidatedScenario& scenario,
                                  std::span<const double> pi_grid,
                                  const WealthRule& wealth_rule = WealthRule::safe_only(),
                                  int n_threads = 0);

struct SeparationCell {
    double rho = 0.0;
    double mu_f = 0.0;
    double argmax_pi = 0.0;
    double esr_at_argmax = 0.0;
    std::uint64_t batch_checksum = 0;
};

// Grid-search argmax across the (rho, mu_f) cross product with a shared
// seed. Portfolio separation predicts every cell identifies the same
// optimal fund proportion, within one grid step of the closed form.
struct SeparationReport {
    std::vector<SeparationCell> cells;
    double grid_step = 0.0;
    double predicted_pi = 0.0;
    bool argmax_identical = false;        // argmax equal across all cells
    bool within_one_step_of_predicted = false;
    std::uint64_t seed = 0;
};

// Requires nonempty lists and the fund branch active in every variant, so
// the argmax is identified.
SeparationReport separation_experiment(const ValidatedScenario& base,
                                       std::span<const double> rho_list,
                                       std::span<const double> mu_f_list,
                                       std::span<const double> pi_grid,
                                       const WealthRule& wealth_rule =
                                           WealthRule::safe_only(),
                                       int n_threads = 0);

// Uniform grid lo, lo+step, ..., up to hi (inclusive within a half-step).
std::vector<double> make_pi_grid(double lo, double hi, double step);

}  // namespace feesim

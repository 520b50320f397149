#include "feesim/app.hpp"

#include <charconv>
#include <cmath>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "feesim/closed_form.hpp"
#include "feesim/numerics.hpp"
#include "feesim/errors.hpp"
#include "feesim/fund_dynamics.hpp"
#include "feesim/hjb_checker.hpp"
#include "feesim/io.hpp"
#include "feesim/optimizer.hpp"
#include "feesim/path_engine.hpp"
#include "feesim/policies.hpp"
#include "feesim/wealth_dynamics.hpp"
#include "feesim/welfare.hpp"

namespace feesim {

namespace {

constexpr const char* kModule = "experiment_cli";
using nlohmann::json;

json scenario_to_json(const ValidatedScenario& s) {
    json fees;
    fees["scheme"] = s.fees.name();
    if (s.fees.is_hedge())
        fees["alpha"] = s.fees.alpha();
    else
        fees["phi"] = s.fees.phi();
    fees["degenerate_no_fee"] = s.degenerate_no_fee;
    return json{
        {"market",
         {{"mu_x", s.market.mu_x},
          {"sigma_x", s.market.sigma_x},
          {"mu_f", s.market.mu_f},
          {"sigma_f", s.market.sigma_f},
          {"rho", s.market.rho}}},
        {"fees", fees},
        {"preferences", {{"gamma", s.prefs.gamma}, {"proven_regime", s.proven_regime}}},
        {"simulation",
         {{"horizon_T", s.sim.horizon_T},
          {"dt", s.sim.dt},
          {"n_paths", s.sim.n_paths},
          {"seed", s.sim.seed},
          {"x0", s.sim.x0},
          {"f0", s.sim.f0},
          {"n_steps", s.n_steps}}},
        {"derived", {{"nu_x", s.nu_x}, {"nu_f", s.nu_f}, {"p", s.p}}}};
}

json estimate_to_json(const EsrEstimate& e) {
    return json{{"esr", e.value},
                {"stderr", e.std_error},
                {"T", e.horizon_T},
                {"n_paths", e.n_paths},
                {"utility", e.utility}};
}

// --- [experiment] schema helpers -----------------------------------------

class ExperimentSpec {
public:
    ExperimentSpec(const std::string& subcommand, const ParsedConfig& config)
        : subcommand_(subcommand), config_(config) {}

    void allow(std::initializer_list<const char*> keys) {
        std::set<std::string> known(keys.begin(), keys.end());
        for (const auto& [key, _] : config_.experiment) {
            if (!known.count(key))
                throw ParseError(kModule, line_of(key),
                                 "unknown key '" + key + "' in [experiment] for '" +
                                     subcommand_ + "'");
        }
    }

    bool has(const std::string& key) const { return config_.experiment.count(key) != 0; }

    std::string raw(const std::string& key) const { return config_.experiment.at(key); }

    double number(const std::string& key) const {
        return parse_number(raw(key), key);
    }
    double number_or(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }
    double required_number(const std::string& key) const {
        if (!has(key))
            throw ParseError(kModule, 0, "'" + subcommand_ + "' requires key '" + key +
                                             "' in [experiment]");
        return number(key);
    }
    std::string string_or(const std::string& key, const std::string& fallback) const {
        return has(key) ? raw(key) : fallback;
    }
    bool flag_or(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const std::string v = raw(key);
        if (v == "true") return true;
        if (v == "false") return false;
        throw ParseError(kModule, line_of(key), "'" + key + "' must be true or false");
    }
    std::vector<double> number_list(const std::string& key) const {
        std::vector<double> out;
        std::istringstream stream(raw(key));
        std::string item;
        while (std::getline(stream, item, ',')) out.push_back(parse_number(item, key));
        if (out.empty())
            throw ParseError(kModule, line_of(key), "'" + key + "' must be a list");
        return out;
    }
    std::vector<double> required_number_list(const std::string& key) const {
        if (!has(key))
            throw ParseError(kModule, 0, "'" + subcommand_ + "' requires key '" + key +
                                             "' in [experiment]");
        return number_list(key);
    }

private:
    std::size_t line_of(const std::string& key) const {
        const auto it = config_.experiment_lines.find(key);
        return it == config_.experiment_lines.end() ? 0 : it->second;
    }
    double parse_number(std::string s, const std::string& key) const {
        const auto first = s.find_first_not_of(" \t");
        const auto last = s.find_last_not_of(" \t");
        if (first == std::string::npos)
            throw ParseError(kModule, line_of(key), "'" + key + "' has an empty entry");
        s = s.substr(first, last - first + 1);
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ParseError(kModule, line_of(key),
                             "value of '" + key + "' is not a number");
        return v;
    }

    std::string subcommand_;
    const ParsedConfig& config_;
};

FundPolicy fund_policy_from(const ExperimentSpec& spec, const ValidatedScenario& s) {
    const std::string kind = spec.string_or("policy_x", "optimal");
    if (kind == "optimal") return optimal_fund_policy(s.fees, s.market, s.prefs.gamma);
    if (kind == "constant")
        return FundPolicy::constant_policy(spec.required_number("pi_x"));
    throw ParseError(kModule, 0, "policy_x must be 'optimal' or 'constant'");
}

WealthRule wealth_rule_from(const ExperimentSpec& spec, const char* key,
                            const std::string& fallback) {
    const std::string kind = spec.string_or(key, fallback);
    if (kind == "optimal") return WealthRule::optimal();
    if (kind == "zero") return WealthRule::safe_only();
    throw ParseError(kModule, 0, std::string(key) + " must be 'optimal' or 'zero'");
}

void write_json(const std::filesystem::path& dir, const char* name, const json& doc) {
    atomic_write_file(dir / name, doc.dump(2) + "\n");
}

void dump_path_csv(const std::filesystem::path& dir, const PathBatch& batch) {
    std::string csv = "path,t,dW_x,dW_f\n";
    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        for (std::size_t k = 0; k < batch.n_steps; ++k) {
            csv += std::to_string(batch.first_path + p);
            csv += ',';
            csv += format_full(static_cast<double>(k) * batch.dt);
            csv += ',';
            csv += format_full(batch.dW_x(p, k));
            csv += ',';
            csv += format_full(batch.dW_f(p, k));
            csv += '\n';
        }
    }
    atomic_write_file(dir / "paths.csv", csv);
}

void dump_trajectory_csv(const std::filesystem::path& dir, const FundTrajectory& fund,
                         const WealthTrajectory& wealth) {
    std::string csv = "path,t,X,X_star,C,F,excess\n";
    for (std::size_t p = 0; p < fund.X.n_paths(); ++p) {
        for (std::size_t k = 0; k < fund.X.n_nodes(); ++k) {
            csv += std::to_string(p);
            csv += ',';
            csv += format_full(static_cast<double>(k) * fund.dt);
            csv += ',';
            csv += format_full(fund.X(p, k));
            csv += ',';
            if (fund.has_high_water_mark()) csv += format_full(fund.X_star(p, k));
            csv += ',';
            csv += format_full(fund.C(p, k));
            csv += ',';
            csv += format_full(wealth.F(p, k));
            csv += ',';
            csv += format_full(wealth.excess(p, k));
            csv += '\n';
        }
    }
    atomic_write_file(dir / "trajectories.csv", csv);
}

json closed_form_to_json(const ValidatedScenario& s) {
    const WelfareBreakdown w = esr_closed(s);
    return json{{"fund_branch", w.fund_branch},
                {"private_branch", w.private_branch},
                {"value", w.value},
                {"active_branch", to_string(w.active_branch)}};
}

// --- subcommand bodies ----------------------------------------------------

json cmd_thresholds(const ValidatedScenario& s, const ParsedConfig& config,
                    const RunOptions& options) {
    ExperimentSpec spec("thresholds", config);
    spec.allow({});
    (void)options;

    json out;
    out["closed_form"] = closed_form_to_json(s);
    if (s.fees.is_hedge()) {
        const double alpha = s.fees.alpha();
        out["effective_risk_aversion"] =
            effective_risk_aversion(alpha, s.prefs.gamma);
        out["attention_threshold"] = attention_threshold_hedge(alpha, s.prefs.gamma);
        out["sharpe_ratio_multiple"] = s.nu_f > 0.0 ? json(s.nu_x / s.nu_f) : json();
    } else {
        const AttentionCondition cond =
            attention_condition_mutual(s.market, s.fees.phi(), s.prefs.gamma);
        out["attention_condition"] = {{"focus_on_fund", cond.focus_on_fund},
                                      {"margin", cond.margin}};
    }
    if (s.nu_x > s.nu_f && s.nu_f > 0.0)
        out["fee_indifference_alpha"] = fee_indifference_alpha(s.market, s.prefs.gamma);
    else
        out["fee_indifference_alpha"] = nullptr;
    return out;
}

json cmd_esr(const ValidatedScenario& s, const ParsedConfig& config,
             const RunOptions& options) {
    ExperimentSpec spec("esr", config);
    spec.allow({"policy_x", "pi_x", "policy_f", "horizons"});
    const FundPolicy fund_policy = fund_policy_from(spec, s);
    const WealthRule rule = wealth_rule_from(spec, "policy_f", "optimal");
    const WelfareBreakdown closed = esr_closed(s);

    json out;
    out["policy"] = {{"fund", fund_policy.descriptor}, {"wealth", rule.descriptor()}};
    out["scheme"] = s.fees.name();
    out["gamma"] = s.prefs.gamma;
    out["closed_form"] = closed_form_to_json(s);

    if (spec.has("horizons")) {
        const std::vector<double> horizons = spec.number_list("horizons");
        const auto curve = esr_curve(s, fund_policy, rule, horizons, options.n_threads);
        json arr = json::array();
        for (const auto& est : curve) {
            json e = estimate_to_json(est);
            e["abs_gap"] = std::abs(est.value - closed.value);
            arr.push_back(e);
        }
        out["curve"] = arr;
    } else {
        if (!fund_policy.constant)
            throw DomainError(kModule, "policy_x",
                              "terminal runs support constant fund policies only");
        const TerminalBatch batch =
            simulate_terminal(s, *fund_policy.constant, rule, options.n_threads);
        const EsrEstimate est =
            esr_for_gamma(batch.wealth, s.sim.horizon_T, s.prefs.gamma);
        json e = estimate_to_json(est);
        e["abs_gap"] = std::abs(est.value - closed.value);
        e["batch_checksum"] = batch.increments_checksum;
        out["estimate"] = e;
    }
    return out;
}

json cmd_simulate(const ValidatedScenario& s, const ParsedConfig& config,
                  const RunOptions& options) {
    ExperimentSpec spec("simulate", config);
    spec.allow({"policy_x", "pi_x", "policy_f", "pi_f"});
    const FundPolicy fund_policy = fund_policy_from(spec, s);
    if (!fund_policy.constant)
        throw DomainError(kModule, "policy_x",
                          "simulate supports constant fund policies only");

    const PathBatch batch = generate_increments(
        s, 0, std::numeric_limits<std::size_t>::max(), kDefaultBatchBudgetBytes,
        options.n_threads);

    FundTrajectory fund;
    if (s.fees.is_hedge()) {
        const ReturnGrid r = cumulative_return(*fund_policy.constant, s.market.mu_x,
                                               s.market.sigma_x, batch, Asset::Fund);
        fund = simulate_hedge_fund(r, s.fees.alpha(), s.sim.x0);
    } else {
        const ReturnGrid r = cumulative_return(*fund_policy.constant, s.market.mu_x,
                                               s.market.sigma_x, batch, Asset::Fund);
        fund = simulate_mutual_fund(r, s.fees.phi(), s.sim.x0);
    }

    const std::string policy_f = spec.string_or("policy_f", "optimal");
    WealthTrajectory wealth;
    if (policy_f == "optimal") {
        wealth = simulate_wealth_optimal(fund, s, batch);
    } else if (policy_f == "zero") {
        wealth = simulate_wealth_feedback(WealthPolicy::constant_policy(0.0), fund, s,
                                          batch);
    } else if (policy_f == "constant") {
        wealth = simulate_wealth_feedback(
            WealthPolicy::constant_policy(spec.required_number("pi_f")), fund, s, batch);
    } else {
        throw ParseError(kModule, 0, "policy_f must be 'optimal', 'zero' or 'constant'");
    }

    const std::size_t last = fund.X.n_nodes() - 1;
    std::vector<double> wealth_T(batch.n_paths), fund_T(batch.n_paths);
    for (std::size_t p = 0; p < batch.n_paths; ++p) {
        wealth_T[p] = wealth.F(p, last);
        fund_T[p] = fund.X(p, last);
    }

    json out;
    out["policy"] = {{"fund", fund_policy.descriptor}, {"wealth", wealth.policy_id}};
    out["estimate"] =
        estimate_to_json(esr_for_gamma(wealth_T, s.sim.horizon_T, s.prefs.gamma));
    out["terminal_fund_mean"] =
        pairwise_sum(std::span<const double>(fund_T)) / static_cast<double>(batch.n_paths);
    out["terminal_wealth_mean"] =
        pairwise_sum(std::span<const double>(wealth_T)) /
        static_cast<double>(batch.n_paths);

    if (options.dump_trajectories) dump_trajectory_csv(options.out_dir, fund, wealth);
    if (options.dump_paths) dump_path_csv(options.out_dir, batch);
    return out;
}

json cmd_hjb_check(const ValidatedScenario& s, const ParsedConfig& config,
                   const RunOptions& options) {
    ExperimentSpec spec("hjb-check", config);
    spec.allow({"delta_list", "xi_min", "n_xi", "phi_min", "phi_max", "n_phi",
                "singular_margin", "dump_residuals"});
    if (!s.fees.is_hedge())
        throw DomainError(kModule, "fees",
                          "hjb-check applies to the hedge scheme (log utility)");
    const double alpha = s.fees.alpha();

    HjbGridSpec grid;
    grid.xi_min = spec.number_or("xi_min", -5.0);
    grid.n_xi = static_cast<std::size_t>(spec.number_or("n_xi", 50));
    grid.phi_min = spec.number_or("phi_min", -4.0);
    grid.phi_max = spec.number_or("phi_max", 4.0);
    grid.n_phi = static_cast<std::size_t>(spec.number_or("n_phi", 50));
    grid.singular_margin = spec.number_or("singular_margin", 1e-3);

    std::vector<double> deltas = {0.0, 0.4, 1.0 - alpha};
    if (spec.has("delta_list")) deltas = spec.number_list("delta_list");

    json reports = json::array();
    std::string residual_csv = "delta,xi,phi,residual\n";
    for (double delta : deltas) {
        const HjbResidualReport rep = hjb_residual_grid(delta, alpha, s.market, grid);
        reports.push_back({{"delta", delta},
                           {"beta", rep.beta},
                           {"max_abs_residual", rep.max_abs_residual},
                           {"max_abs_boundary_residual", rep.max_abs_boundary_residual},
                           {"n_xi", rep.xi_nodes.size()},
                           {"n_phi", rep.phi_nodes.size()}});
        if (spec.flag_or("dump_residuals", false)) {
            std::size_t idx = 0;
            for (double xi : rep.xi_nodes)
                for (double phi : rep.phi_nodes) {
                    residual_csv += format_full(delta);
                    residual_csv += ',';
                    residual_csv += format_full(xi);
                    residual_csv += ',';
                    residual_csv += format_full(phi);
                    residual_csv += ',';
                    residual_csv += format_full(rep.residuals[idx++]);
                    residual_csv += '\n';
                }
        }
    }
    if (spec.flag_or("dump_residuals", false))
        atomic_write_file(options.out_dir / "residuals.csv", residual_csv);

    json out;
    out["grid"] = {{"xi_min", grid.xi_min},     {"n_xi", grid.n_xi},
                   {"phi_min", grid.phi_min},   {"phi_max", grid.phi_max},
                   {"n_phi", grid.n_phi},       {"singular_margin", grid.singular_margin}};
    out["reports"] = reports;
    return out;
}

json cmd_optimize(const ValidatedScenario& s, const ParsedConfig& config,
                  const RunOptions& options) {
    ExperimentSpec spec("optimize", config);
    spec.allow({"pi_min", "pi_max", "pi_step", "wealth_rule"});
    const std::vector<double> grid = make_pi_grid(spec.required_number("pi_min"),
                                                  spec.required_number("pi_max"),
                                                  spec.required_number("pi_step"));
    const WealthRule rule = wealth_rule_from(spec, "wealth_rule", "zero");
    const GridSearchResult result =
        grid_search_fund(s, grid, rule, options.n_threads);

    std::string csv = "pi_x,esr,stderr\n";
    for (std::size_t c = 0; c < result.pi_grid.size(); ++c) {
        csv += format_full(result.pi_grid[c]);
        csv += ',';
        csv += format_full(result.estimates[c].value);
        csv += ',';
        csv += format_full(result.estimates[c].std_error);
        csv += '\n';
    }
    atomic_write_file(options.out_dir / "grid.csv", csv);

    json out;
    out["wealth_rule"] = result.wealth_rule;
    out["argmax_pi"] = result.argmax_pi;
    out["predicted_pi"] = result.predicted_pi;
    out["argmax_gap"] = std::abs(result.argmax_pi - result.predicted_pi);
    out["batch_checksum"] = result.batch_checksum;
    out["n_candidates"] = result.pi_grid.size();
    return out;
}

json cmd_separation(const ValidatedScenario& s, const ParsedConfig& config,
                    const RunOptions& options) {
    ExperimentSpec spec("separation", config);
    spec.allow({"rho_list", "mu_f_list", "pi_min", "pi_max", "pi_step", "wealth_rule"});
    const std::vector<double> grid = make_pi_grid(spec.required_number("pi_min"),
                                                  spec.required_number("pi_max"),
                                                  spec.required_number("pi_step"));
    const std::vector<double> rho_list = spec.required_number_list("rho_list");
    const std::vector<double> mu_f_list = spec.required_number_list("mu_f_list");
    const WealthRule rule = wealth_rule_from(spec, "wealth_rule", "zero");

    const SeparationReport report =
        separation_experiment(s, rho_list, mu_f_list, grid, rule, options.n_threads);

    json cells = json::array();
    for (const auto& cell : report.cells)
        cells.push_back({{"rho", cell.rho},
                         {"mu_f", cell.mu_f},
                         {"argmax_pi", cell.argmax_pi},
                         {"esr_at_argmax", cell.esr_at_argmax},
                         {"batch_checksum", cell.batch_checksum}});

    json out;
    out["cells"] = cells;
    out["grid_step"] = report.grid_step;
    out["predicted_pi"] = report.predicted_pi;
    out["argmax_identical"] = report.argmax_identical;
    out["within_one_step_of_predicted"] = report.within_one_step_of_predicted;
    return out;
}

}  // namespace

ParsedConfig apply_overrides(const ParsedConfig& config, const RunOptions& options) {
    ParsedConfig out = config;
    SimConfig sim = config.scenario.sim;
    if (options.seed) sim.seed = *options.seed;
    if (options.n_paths) sim.n_paths = *options.n_paths;
    if (options.horizon) sim.horizon_T = *options.horizon;
    out.scenario = validate(config.scenario.market, config.scenario.fees,
                            config.scenario.prefs, sim);
    return out;
}

json run_subcommand(const std::string& subcommand, const ParsedConfig& config,
                    const RunOptions& options) {
    std::filesystem::create_directories(options.out_dir);
    const ValidatedScenario& s = config.scenario;

    json payload;
    if (subcommand == "thresholds")
        payload = cmd_thresholds(s, config, options);
    else if (subcommand == "esr")
        payload = cmd_esr(s, config, options);
    else if (subcommand == "simulate")
        payload = cmd_simulate(s, config, options);
    else if (subcommand == "hjb-check")
        payload = cmd_hjb_check(s, config, options);
    else if (subcommand == "optimize")
        payload = cmd_optimize(s, config, options);
    else if (subcommand == "separation")
        payload = cmd_separation(s, config, options);
    else
        throw DomainError(kModule, "subcommand", "unknown subcommand " + subcommand);

    json out;
    out["command"] = subcommand;
    out["scenario"] = scenario_to_json(s);
    out["seed"] = s.sim.seed;
    out[subcommand == "hjb-check" ? "hjb_check" : subcommand] = payload;
    write_json(options.out_dir, "summary.json", out);
    return out;
}

int run_command(const std::string& subcommand, const RunOptions& options) {
    try {
        const ParsedConfig config =
            apply_overrides(parse_config(options.config_path), options);
        const json summary = run_subcommand(subcommand, config, options);
        std::cout << subcommand << ": ok -> "
                  << (options.out_dir / "summary.json").string() << "\n";
        return 0;
    } catch (const Error& e) {
        const json err = {{"error", e.kind()}, {"module", e.module()},
                          {"message", e.message()}};
        std::cerr << err.dump() << "\n";
        return 1;
    } catch (const std::exception& e) {
        const json err = {{"error", "InternalError"}, {"module", "experiment_cli"},
                          {"message", e.what()}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
}

}  // namespace feesim

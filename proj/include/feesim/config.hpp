#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "feesim/market_model.hpp"

namespace feesim {

// Parsed scenario file: sections [market], [fees], [preferences],
// [simulation] are validated into the frozen scenario; [experiment] keys
// pass through raw and are validated against the chosen subcommand's
// schema at dispatch. Unknown sections or keys are errors, as are configs
// setting both alpha and phi (the schemes exclude each other).
struct ParsedConfig {
    ValidatedScenario scenario;
    std::map<std::string, std::string> experiment;
    std::map<std::string, std::size_t> experiment_lines;  // for diagnostics
};

// Defaults applied when a key is absent: dt = 0.01, n_paths = 10000,
// horizon_T = 200, seed = 42, x0 = f0 = 1, rho = 0, gamma = 1. The market
// drifts/volatilities and exactly one fee rate are required.
ParsedConfig parse_config(const std::filesystem::path& path);
ParsedConfig parse_config_text(std::string_view text);

}  // namespace feesim

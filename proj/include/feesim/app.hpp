#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "feesim/config.hpp"

namespace feesim {

struct RunOptions {
    std::filesystem::path config_path;
    std::filesystem::path out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n_paths;
    std::optional<double> horizon;
    int n_threads = 0;  // 0 = hardware concurrency
    bool dump_paths = false;
    bool dump_trajectories = false;
};

// Subcommands: simulate | esr | thresholds | hjb-check | optimize |
// separation. Writes summary.json (and any requested CSVs) atomically into
// out_dir and returns the summary document. Every output embeds the full
// resolved scenario and seed, so artifacts are re-derivable from their own
// header. Throws feesim errors on invalid input.
nlohmann::json run_subcommand(const std::string& subcommand, const ParsedConfig& config,
                              const RunOptions& options);

// CLI entry: parses the config, applies overrides, dispatches, prints a
// one-line summary. On failure prints a one-line machine-readable error
// JSON to stderr and returns a nonzero status.
int run_command(const std::string& subcommand, const RunOptions& options);

// Rebuilds the scenario with --seed/--paths/--horizon applied.
ParsedConfig apply_overrides(const ParsedConfig& config, const RunOptions& options);

}  // namespace feesim

#include "feesim/config.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <vector>

#include "feesim/errors.hpp"

namespace feesim {

namespace {

constexpr const char* kModule = "experiment_cli";

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

struct RawEntry {
    std::string value;
    std::size_t line = 0;
};

using Section = std::map<std::string, RawEntry>;

double to_double(const std::string& key, const RawEntry& entry) {
    const std::string& s = entry.value;
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(kModule, entry.line, "value of '" + key + "' is not a number");
    return out;
}

std::uint64_t to_u64(const std::string& key, const RawEntry& entry) {
    const std::string& s = entry.value;
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ParseError(kModule, entry.line,
                         "value of '" + key + "' is not an unsigned integer");
    return out;
}

const std::set<std::string> kMarketKeys = {"mu_x", "sigma_x", "mu_f", "sigma_f", "rho"};
const std::set<std::string> kFeeKeys = {"alpha", "phi"};
const std::set<std::string> kPrefKeys = {"gamma"};
const std::set<std::string> kSimKeys = {"horizon_T", "dt", "n_paths",
                                        "seed",      "x0", "f0"};

}  // namespace

ParsedConfig parse_config_text(std::string_view text) {
    std::map<std::string, Section> sections;
    std::string current;

    std::istringstream stream{std::string(text)};
    std::string raw_line;
    std::size_t line_no = 0;
    while (std::getline(stream, raw_line)) {
        ++line_no;
        const std::string line = trim(raw_line);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError(kModule, line_no, "malformed section header");
            current = trim(line.substr(1, line.size() - 2));
            if (current != "market" && current != "fees" && current != "preferences" &&
                current != "simulation" && current != "experiment")
                throw ParseError(kModule, line_no, "unknown section [" + current + "]");
            if (sections.count(current))
                throw ParseError(kModule, line_no, "duplicate section [" + current + "]");
            sections[current];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(kModule, line_no, "expected 'key = value'");
        if (current.empty())
            throw ParseError(kModule, line_no, "key outside any section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(kModule, line_no, "expected 'key = value'");

        if (current == "market" && !kMarketKeys.count(key))
            throw ParseError(kModule, line_no, "unknown key '" + key + "' in [market]");
        if (current == "fees" && !kFeeKeys.count(key))
            throw ParseError(kModule, line_no, "unknown key '" + key + "' in [fees]");
        if (current == "preferences" && !kPrefKeys.count(key))
            throw ParseError(kModule, line_no,
                             "unknown key '" + key + "' in [preferences]");
        if (current == "simulation" && !kSimKeys.count(key))
            throw ParseError(kModule, line_no,
                             "unknown key '" + key + "' in [simulation]");

        auto [it, inserted] = sections[current].emplace(key, RawEntry{value, line_no});
        if (!inserted)
            throw ParseError(kModule, line_no, "duplicate key '" + key + "'");
    }

    const Section& market_sec = sections["market"];
    const Section& fee_sec = sections["fees"];
    const Section& pref_sec = sections["preferences"];
    const Section& sim_sec = sections["simulation"];

    auto required = [&](const Section& sec, const char* key) -> const RawEntry& {
        const auto it = sec.find(key);
        if (it == sec.end())
            throw ParseError(kModule, 0, std::string("missing required key '") + key + "'");
        return it->second;
    };
    auto optional_double = [&](const Section& sec, const char* key,
                               double fallback) -> double {
        const auto it = sec.find(key);
        return it == sec.end() ? fallback : to_double(key, it->second);
    };

    MarketParams market;
    market.mu_x = to_double("mu_x", required(market_sec, "mu_x"));
    market.sigma_x = to_double("sigma_x", required(market_sec, "sigma_x"));
    market.mu_f = to_double("mu_f", required(market_sec, "mu_f"));
    market.sigma_f = to_double("sigma_f", required(market_sec, "sigma_f"));
    market.rho = optional_double(market_sec, "rho", 0.0);

    const bool has_alpha = fee_sec.count("alpha") != 0;
    const bool has_phi = fee_sec.count("phi") != 0;
    if (has_alpha && has_phi)
        throw ParseError(kModule, fee_sec.at("phi").line,
                         "exactly one fee scheme: set alpha or phi, not both");
    if (!has_alpha && !has_phi)
        throw ParseError(kModule, 0, "missing fee scheme: set alpha or phi in [fees]");
    const FeeScheme fees =
        has_alpha ? FeeScheme::hedge(to_double("alpha", fee_sec.at("alpha")))
                  : FeeScheme::mutual(to_double("phi", fee_sec.at("phi")));

    PreferenceParams prefs;
    prefs.gamma = optional_double(pref_sec, "gamma", 1.0);

    SimConfig sim;
    sim.horizon_T = optional_double(sim_sec, "horizon_T", 200.0);
    sim.dt = optional_double(sim_sec, "dt", 0.01);
    sim.n_paths = sim_sec.count("n_paths")
                      ? static_cast<std::size_t>(to_u64("n_paths", sim_sec.at("n_paths")))
                      : std::size_t{10000};
    sim.seed = sim_sec.count("seed") ? to_u64("seed", sim_sec.at("seed")) : 42;
    sim.x0 = optional_double(sim_sec, "x0", 1.0);
    sim.f0 = optional_double(sim_sec, "f0", 1.0);

    ParsedConfig out;
    out.scenario = validate(market, fees, prefs, sim);
    if (sections.count("experiment")) {
        for (const auto& [key, entry] : sections["experiment"]) {
            out.experiment[key] = entry.value;
            out.experiment_lines[key] = entry.line;
        }
    }
    return out;
}

ParsedConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(kModule, 0, "cannot read config file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

}  // namespace feesim

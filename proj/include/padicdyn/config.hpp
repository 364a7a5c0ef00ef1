#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "padicdyn/rational_map.hpp"
#include "padicdyn/verify.hpp"

namespace padicdyn {

/// Parsed and validated analysis configuration. Map parameters are checked
/// against the construction rules at load time, before any computation.
struct AnalysisConfig {
    explicit AnalysisConfig(MapParams map_params) : params(std::move(map_params)) {}

    MapParams params;
    bool radii_auto = true;
    std::vector<long> radii;  // used when radii_auto is false
    int max_level = 12;
    std::uint64_t max_domain = std::uint64_t(1) << 21;
    int orbit_cap = 30;
    std::uint64_t seed = 1;
    bool seed_explicit = false;
    MapCheckCounts map_checks;
    SampleCounts verify_samples;
};

/// Parses a config document. `source` names the file for diagnostics.
/// Throws ConfigError with a field-level message on any problem, including
/// unknown keys.
AnalysisConfig parse_config(const nlohmann::json& doc, const std::string& source);

/// Reads and parses a JSON config file.
AnalysisConfig load_config(const std::string& path);

/// Radius exponents to analyze: the configured list, or the automatic window
/// derived from the invariant set (threshold+1..threshold+5, or two below and
/// three above beta when every radius but beta is invariant).
std::vector<long> resolve_radii(const AnalysisConfig& config, const DynamicsProfile& prof);

/// Normalized config echo; reloading the echoed document reproduces the run.
nlohmann::ordered_json echo_config(const AnalysisConfig& config,
                                   const std::vector<long>& resolved_radii);

} // namespace padicdyn

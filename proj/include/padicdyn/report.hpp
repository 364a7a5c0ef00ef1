#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "padicdyn/config.hpp"
#include "padicdyn/ergodicity.hpp"

namespace padicdyn {

/// A finished run: the machine-readable report plus the flags the CLI maps
/// to exit codes.
struct RunOutcome {
    nlohmann::ordered_json report;
    bool disagreement = false;   // theory and empirical oracle could not be reconciled
    bool checks_failed = false;  // some verification sweep failed
};

/// Full pipeline: profile, invariant set, radius-map table, then rho /
/// measure / ergodicity verdict per configured radius, plus the per-map
/// check summary.
RunOutcome run_analysis(const AnalysisConfig& config, ExecMode mode);

/// Orbit table for one starting point.
RunOutcome run_orbit(const AnalysisConfig& config, const std::string& start_text, int steps,
                     ExecMode mode);

/// Ergodicity verdicts only, for one radius exponent or the configured list.
RunOutcome run_ergodicity(const AnalysisConfig& config, std::optional<long> r_exp,
                          ExecMode mode);

/// All randomized verification suites.
RunOutcome run_verify_report(const AnalysisConfig& config, ExecMode mode,
                             const VerifyHooks& hooks = {});

/// Exit code contract: 0 ok, 3 when theory and oracle disagree or a
/// verification sweep fails (2 is reserved for config errors and never
/// produced here).
int exit_code(const RunOutcome& outcome);

/// Deterministic human-readable rendering of any report produced above.
std::string render_text(const nlohmann::ordered_json& report);

/// Structural validation against the shipped schema (a pragmatic subset of
/// JSON Schema: type, enum, const, required, properties, additionalProperties,
/// items, oneOf, minimum). Returns true when the document conforms; fills
/// `error` with a path-qualified message otherwise.
bool validate_against_schema(const nlohmann::json& document, const nlohmann::json& schema,
                             std::string* error);

/// JSON encoding helpers shared by reports and tests.
nlohmann::ordered_json radius_json(const Radius& r, long prime);
nlohmann::ordered_json measure_json(const MeasureValue& m);
nlohmann::ordered_json verdict_json(const ErgodicityVerdict& v, long prime);
nlohmann::ordered_json profile_json(const DynamicsProfile& prof, long prime);

} // namespace padicdyn

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "padicdyn/ergodicity.hpp"
#include "padicdyn/parallel.hpp"
#include "padicdyn/rational_map.hpp"

namespace padicdyn {

/// Sample counts of the randomized verification suites. The defaults are the
/// full-size runs; smaller counts are useful for smoke tests and for seed
/// sweeps where statistical power is not the point.
struct SampleCounts {
    int norm_pairs = 10000;
    int displacement_pairs = 500;
    int radius_model_cases = 300;
    int radius_model_deep_cases = 40;  // cases that run the full depth below
    int radius_model_steps = 20;
    int isometry_cases = 100;
    int displacement_table_spheres = 40;
    int displacement_table_points = 3;
    int orbit_displacement_spheres = 12;
    int orbit_displacement_steps = 20;
    int p2_param_sets = 200;
    int p2_max_level = 12;
    int podd_param_sets = 100;
    int ball_point_samples = 50;
    int mod4_pairs = 500;
    int mod4_max_level = 12;
};

struct SuiteOutcome {
    std::string name;
    int checks = 0;
    int failures = 0;
    std::vector<std::string> notes;  // first few failure diagnostics
    bool passed() const { return failures == 0; }
};

/// Test seam: replaces the displacement-norm table in the suite that checks
/// it, so fault injection can prove the check actually bites.
struct VerifyHooks {
    std::function<Radius(const DynamicsProfile&, const MapParams&, long)> rho_override;
};

/// Norm axioms on random pairs: multiplicativity, the strong triangle
/// inequality with its equality case, construction canonicalization, and the
/// ball-nesting property of ultrametric balls.
SuiteOutcome norm_axiom_suite(std::uint64_t seed, int pairs, ExecMode mode);

/// |f(x) - x0| equals |x - x0| |x + a| / |x + c| on random (params, x).
SuiteOutcome displacement_identity_suite(std::uint64_t seed, int cases, ExecMode mode);

/// Exact orbit norms follow the radius map: determined steps match exactly,
/// boundary steps satisfy the Indeterminate bounds. A slice of the cases is
/// seeded exactly on the boundary spheres.
SuiteOutcome radius_model_suite(std::uint64_t seed, int cases, int deep_cases, int steps,
                                ExecMode mode);

/// |f(x) - f(s)| = |x - s| for x in a ball inside an invariant sphere.
SuiteOutcome isometry_suite(std::uint64_t seed, int cases, ExecMode mode);

/// The displacement-norm table matches |f(s) - s| pointwise on sampled
/// invariant spheres.
SuiteOutcome displacement_table_suite(std::uint64_t seed, int spheres, int points_per_sphere,
                                      ExecMode mode, const VerifyHooks& hooks = {});

/// |f^{n+1}(s) - f^n(s)| stays rho(r) along orbits; the rho-ball is closed
/// under f and any smaller ball around s is escaped immediately.
SuiteOutcome orbit_displacement_suite(std::uint64_t seed, int spheres, int steps, ExecMode mode);

/// p = 2: the closed-form verdict against the cycle oracle at levels
/// 2..max_level, the measure consistency of the minimal invariant ball, and
/// the mod-4 data of the conjugated map.
SuiteOutcome p2_criterion_suite(std::uint64_t seed, int param_sets, int max_level, ExecMode mode);

/// p in {3, 5, 7}: the covered not-ergodic cases come with a concrete
/// invariant ball of measure <= 1/(p-1), verified pointwise.
SuiteOutcome podd_ball_suite(std::uint64_t seed, int param_sets, int ball_samples, ExecMode mode);

/// The mod-4 ergodicity criterion against brute-force transitivity of random
/// polynomial pairs on odd residues mod 2^n.
SuiteOutcome mod4_bruteforce_suite(std::uint64_t seed, int pairs, int max_level, ExecMode mode);

struct VerifyPlan {
    std::uint64_t seed = 1;
    SampleCounts counts;
    ExecMode mode = ExecMode::Parallel;
    VerifyHooks hooks;
};

struct VerifyResult {
    std::vector<SuiteOutcome> suites;
    bool all_passed() const {
        for (const auto& s : suites) {
            if (!s.passed()) return false;
        }
        return true;
    }
};

/// Runs every suite above with per-suite seeds derived from plan.seed.
VerifyResult run_verify(const VerifyPlan& plan);

/// Per-map check summary embedded in analysis reports: the same identities,
/// restricted to one configured map.
struct MapCheckCounts {
    int displacement_checks = 60;
    int radius_model_checks = 12;
    int radius_model_steps = 12;
    int isometry_checks = 40;
};

struct MapCheckSummary {
    std::vector<SuiteOutcome> checks;
    bool all_passed() const {
        for (const auto& s : checks) {
            if (!s.passed()) return false;
        }
        return true;
    }
};

MapCheckSummary map_check_summary(const MapParams& params, const MapCheckCounts& counts,
                                  std::uint64_t seed, ExecMode mode);

} // namespace padicdyn

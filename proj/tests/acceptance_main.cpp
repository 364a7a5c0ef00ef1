// Acceptance suite: every criterion runs at its stated size and tolerance
// (all checks are exact; tolerances appear only as runtime budgets) and
// prints one PASS/FAIL line. The process exits nonzero if any criterion
// fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "padicdyn/report.hpp"

using namespace padicdyn;

namespace {

using nlohmann::json;

int failures_total = 0;

void report_line(int index, bool pass, double seconds, double budget,
                 const std::string& label, const std::string& detail) {
    std::string timing = budget > 0 ? (std::to_string(seconds).substr(0, 5) + "s < " +
                                       std::to_string(static_cast<int>(budget)) + "s budget")
                                    : (std::to_string(seconds).substr(0, 5) + "s");
    std::printf("[%d/9] %s  %s — %s  (%s)\n", index, pass ? "PASS" : "FAIL", label.c_str(),
                detail.c_str(), timing.c_str());
    if (!pass) ++failures_total;
}

void criterion(int index, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto t0 = std::chrono::steady_clock::now();
    bool pass = false;
    try {
        pass = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_seconds > 0 && seconds >= budget_seconds) {
        pass = false;
        detail += " [over the runtime budget]";
    }
    report_line(index, pass, seconds, budget_seconds, label, detail);
}

bool suite_ok(const SuiteOutcome& s, std::string& detail) {
    detail = std::to_string(s.checks) + " checks, " + std::to_string(s.failures) + " failures";
    if (!s.notes.empty()) detail += "; first: " + s.notes.front();
    return s.failures == 0;
}

SampleCounts seed_sweep_counts() {
    SampleCounts counts;
    counts.norm_pairs = 300;
    counts.displacement_pairs = 50;
    counts.radius_model_cases = 12;
    counts.radius_model_deep_cases = 1;
    counts.radius_model_steps = 10;
    counts.isometry_cases = 20;
    counts.displacement_table_spheres = 8;
    counts.displacement_table_points = 2;
    counts.orbit_displacement_spheres = 3;
    counts.orbit_displacement_steps = 8;
    counts.p2_param_sets = 12;
    counts.p2_max_level = 10;
    counts.podd_param_sets = 9;
    counts.ball_point_samples = 8;
    counts.mod4_pairs = 50;
    counts.mod4_max_level = 10;
    return counts;
}

json golden_config_doc(std::uint64_t seed) {
    return json{{"p", 2},          {"a", "0/1"}, {"b", "1/1"},
                {"c", "1/1"},      {"radii", "auto"}, {"seed", seed}};
}

} // namespace

int main() {
    const ExecMode mode = ExecMode::Parallel;

    criterion(1, "norm axioms on 10000 random pairs", 5.0, [&](std::string& detail) {
        return suite_ok(norm_axiom_suite(0xA1, 10000, mode), detail);
    });

    criterion(2, "orbit norms follow the radius maps (300 cases, n <= 20)", 30.0,
              [&](std::string& detail) {
                  return suite_ok(radius_model_suite(0xA2, 300, 40, 20, mode), detail);
              });

    criterion(3, "isometry on invariant spheres (100 configurations)", 0,
              [&](std::string& detail) {
                  return suite_ok(isometry_suite(0xA3, 100, mode), detail);
              });

    criterion(4, "displacement-norm table and orbit constancy (n <= 20)", 0,
              [&](std::string& detail) {
                  std::string first, second;
                  bool table = suite_ok(displacement_table_suite(0xA4, 40, 3, mode), first);
                  bool orbits = suite_ok(orbit_displacement_suite(0xA5, 12, 20, mode), second);
                  detail = "table: " + first + "; orbits: " + second;
                  return table && orbits;
              });

    criterion(5, "p=2 ergodicity criterion vs cycle oracle (200 parameter sets)", 60.0,
              [&](std::string& detail) {
                  return suite_ok(p2_criterion_suite(0xA6, 200, 12, mode), detail);
              });

    criterion(6, "p in {3,5,7}: invariant ball witnesses (100 parameter sets)", 0,
              [&](std::string& detail) {
                  return suite_ok(podd_ball_suite(0xA7, 100, 50, mode), detail);
              });

    criterion(7, "mod-4 criterion vs brute force (500 polynomial pairs)", 0,
              [&](std::string& detail) {
                  return suite_ok(mod4_bruteforce_suite(0xA8, 500, 12, mode), detail);
              });

    criterion(8, "golden instance p=2, a=0, b=1, c=1", 0, [&](std::string& detail) {
        MapParams params(PadicNumber::integer(0, 2), PadicNumber::integer(1, 2),
                         PadicNumber::integer(1, 2));
        DynamicsProfile prof = profile(params);
        bool ok = prof.fixed_point == PadicNumber::integer(1, 2) &&
                  prof.alpha == Radius::power(0) && prof.beta == Radius::power(-1);

        InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);
        ok = ok && inv.kind() == InvariantRadiusSet::Kind::GreaterThanMax &&
             inv.threshold_exp() == 0;
        for (long l = 1; l <= 5; ++l) ok = ok && inv.contains(l);
        ok = ok && !inv.contains(0) && !inv.contains(-1);

        Rng rng(0xA9);
        VerdictOptions options;
        ErgodicityVerdict at2 = ergodicity_verdict(params, 1, options, rng);
        ok = ok && at2.theory.verdict == TheoryVerdict::Ergodic && !at2.disagreement;
        for (const LevelEvidence& e : at2.levels) ok = ok && e.transitive;

        ErgodicityVerdict at4 = ergodicity_verdict(params, 2, options, rng);
        ok = ok && at4.theory.verdict == TheoryVerdict::NotErgodic && !at4.disagreement;
        ok = ok && at4.witness.has_value() &&
             at4.witness->measure.value == mpq_class(1, 2);

        detail = "x0 = " + prof.fixed_point.str() + ", alpha exp 0, beta exp -1, "
                 "ergodic at r=2, not ergodic at r=4 with witness measure 1/2";
        return ok;
    });

    criterion(9, "verify pipeline: 100 seeds green, byte-identical reports", 0,
              [&](std::string& detail) {
                  AnalysisConfig config =
                      parse_config(golden_config_doc(1), "acceptance");
                  config.verify_samples = seed_sweep_counts();

                  int green = 0;
                  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
                      config.seed = seed;
                      RunOutcome outcome = run_verify_report(config, mode);
                      if (!outcome.checks_failed) ++green;
                  }

                  // byte-identity through the real CLI with the full default plan
                  namespace fs = std::filesystem;
                  json doc = golden_config_doc(424242);
                  fs::path path = fs::temp_directory_path() / "padicdyn_acceptance.json";
                  std::ofstream(path) << doc.dump(2);
                  auto capture = [&path](const char* extra) {
                      std::string command = std::string(PADICDYN_CLI_PATH) +
                                            " analyze --config " + path.string() +
                                            " --format json " + extra;
                      FILE* pipe = popen(command.c_str(), "r");
                      if (!pipe) return std::string();
                      std::string output;
                      std::array<char, 4096> buffer;
                      std::size_t n;
                      while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
                          output.append(buffer.data(), n);
                      }
                      pclose(pipe);
                      return output;
                  };
                  std::string first = capture("");
                  std::string second = capture("");
                  std::string serial = capture("--serial");
                  bool identical = !first.empty() && first == second && first == serial;

                  detail = std::to_string(green) +
                           "/100 seeds green; CLI reruns byte-identical: " +
                           (identical ? "yes" : "NO");
                  return green == 100 && identical;
              });

    if (failures_total == 0) {
        std::printf("acceptance: all 9 criteria PASS\n");
    } else {
        std::printf("acceptance: %d criteria FAILED\n", failures_total);
    }
    return failures_total;
}

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "padicdyn/report.hpp"
#include "padicdyn/version.hpp"

namespace {

using padicdyn::AnalysisConfig;
using padicdyn::ExecMode;
using padicdyn::RunOutcome;

struct CommonFlags {
    std::string config_path;
    std::string out_path;
    std::string format = "text";
    std::optional<std::uint64_t> seed;
    std::optional<int> max_level;
    std::optional<int> orbit_cap;
    bool serial = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file")->required();
    cmd->add_option("--out", flags.out_path, "write the report here instead of stdout");
    cmd->add_option("--format", flags.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd->add_option("--seed", flags.seed, "override the config seed");
    cmd->add_option("--max-level", flags.max_level, "override the residue-level bound");
    cmd->add_option("--orbit-cap", flags.orbit_cap, "override the orbit length cap");
    cmd->add_flag("--serial", flags.serial, "run the sweeps single-threaded");
}

AnalysisConfig load_with_overrides(const CommonFlags& flags) {
    AnalysisConfig config = padicdyn::load_config(flags.config_path);
    if (flags.seed) {
        config.seed = *flags.seed;
        config.seed_explicit = true;
    }
    if (flags.max_level) {
        if (*flags.max_level < 2) throw padicdyn::ConfigError("--max-level must be >= 2");
        config.max_level = *flags.max_level;
    }
    if (flags.orbit_cap) {
        if (*flags.orbit_cap < 0) throw padicdyn::ConfigError("--orbit-cap must be >= 0");
        config.orbit_cap = *flags.orbit_cap;
    }
    if (flags.format == "json" && !config.seed_explicit) {
        throw padicdyn::ConfigError(
            "machine-readable output needs an explicit seed (config key \"seed\" or --seed)");
    }
    return config;
}

int emit(const RunOutcome& outcome, const CommonFlags& flags) {
    std::string body = flags.format == "json" ? outcome.report.dump(2) + "\n"
                                              : padicdyn::render_text(outcome.report);
    if (flags.out_path.empty()) {
        std::cout << body;
    } else {
        std::ofstream out(flags.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << flags.out_path << "\n";
            return 2;
        }
        out << body;
    }
    return padicdyn::exit_code(outcome);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(padicdyn::kToolName) +
                 " — dynamics of f(x) = (x^2 + ax + b)/(x + c) over Q_p"};
    app.set_version_flag("--version", padicdyn::kVersion);
    app.require_subcommand(1);

    CommonFlags analyze_flags;
    CLI::App* analyze = app.add_subcommand(
        "analyze", "full analysis: profile, invariant spheres, measures, verdicts");
    add_common(analyze, analyze_flags);

    CommonFlags orbit_flags;
    std::string orbit_start;
    int orbit_steps = 10;
    CLI::App* orbit_cmd =
        app.add_subcommand("orbit", "exact orbit table from a starting point");
    add_common(orbit_cmd, orbit_flags);
    orbit_cmd->add_option("--start", orbit_start, "starting point, e.g. \"5/3\"")->required();
    orbit_cmd->add_option("--steps", orbit_steps, "orbit length (default 10)");

    CommonFlags erg_flags;
    std::optional<long> radius_exp;
    CLI::App* erg = app.add_subcommand(
        "ergodicity", "per-sphere ergodicity verdicts with the cycle oracle");
    add_common(erg, erg_flags);
    erg->add_option("--radius-exp", radius_exp,
                    "radius exponent l for r = p^l (default: configured radii)");

    CommonFlags verify_flags;
    CLI::App* verify =
        app.add_subcommand("verify", "run every randomized verification suite");
    add_common(verify, verify_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*analyze) {
            AnalysisConfig config = load_with_overrides(analyze_flags);
            ExecMode mode = analyze_flags.serial ? ExecMode::Serial : ExecMode::Parallel;
            return emit(padicdyn::run_analysis(config, mode), analyze_flags);
        }
        if (*orbit_cmd) {
            AnalysisConfig config = load_with_overrides(orbit_flags);
            ExecMode mode = orbit_flags.serial ? ExecMode::Serial : ExecMode::Parallel;
            return emit(padicdyn::run_orbit(config, orbit_start, orbit_steps, mode),
                        orbit_flags);
        }
        if (*erg) {
            AnalysisConfig config = load_with_overrides(erg_flags);
            ExecMode mode = erg_flags.serial ? ExecMode::Serial : ExecMode::Parallel;
            return emit(padicdyn::run_ergodicity(config, radius_exp, mode), erg_flags);
        }
        AnalysisConfig config = load_with_overrides(verify_flags);
        ExecMode mode = verify_flags.serial ? ExecMode::Serial : ExecMode::Parallel;
        return emit(padicdyn::run_verify_report(config, mode), verify_flags);
    } catch (const padicdyn::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const padicdyn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

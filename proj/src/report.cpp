#include "padicdyn/report.hpp"

#include <sstream>

#include "padicdyn/radius_dynamics.hpp"
#include "padicdyn/sampling.hpp"
#include "padicdyn/version.hpp"

namespace padicdyn {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string rational_str(const mpq_class& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

ordered_json suite_json(const SuiteOutcome& s) {
    return ordered_json{
        {"name", s.name}, {"checks", s.checks}, {"failures", s.failures}, {"notes", s.notes}};
}

ordered_json report_header(const char* kind, const AnalysisConfig& config,
                           const std::vector<long>& resolved_radii) {
    ordered_json doc;
    doc["tool"] = kToolName;
    doc["version"] = kVersion;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = kind;
    doc["config"] = echo_config(config, resolved_radii);
    return doc;
}

ordered_json invariant_set_json(const DynamicsProfile& prof, long prime) {
    InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);
    ordered_json block;
    if (inv.kind() == InvariantRadiusSet::Kind::GreaterThanMax) {
        block["kind"] = "greater-than-max";
        block["threshold_exp"] = inv.threshold_exp();
        block["description"] = "r = " + std::to_string(prime) + "^l with l > " +
                               std::to_string(inv.threshold_exp());
    } else {
        block["kind"] = "all-except-beta";
        block["threshold_exp"] = inv.threshold_exp();
        block["description"] = "r = " + std::to_string(prime) + "^l with l != " +
                               std::to_string(inv.threshold_exp());
    }
    return block;
}

ordered_json radius_map_json(const DynamicsProfile& prof) {
    ordered_json block;
    block["regime"] = to_string(prof.regime);
    ordered_json branches = ordered_json::array();
    auto row = [](std::string condition, std::string image) {
        return ordered_json{
            {"condition", std::move(condition)}, {"image", std::move(image)},
            {"indeterminate", false}};
    };
    auto boundary = [](std::string condition, std::optional<long> lower,
                       std::optional<long> upper) {
        ordered_json r{{"condition", std::move(condition)}, {"indeterminate", true}};
        if (lower) r["lower_exp"] = *lower;
        if (upper) r["upper_exp"] = *upper;
        return r;
    };
    auto shifted = [](const std::string& base, long delta) {
        if (delta == 0) return base;
        if (delta < 0) return base + " - " + std::to_string(-delta);
        return base + " + " + std::to_string(delta);
    };
    const long be = prof.beta.exponent();
    const std::string bes = std::to_string(be);
    switch (prof.regime) {
        case Regime::AlphaLess: {
            if (prof.alpha.is_power()) {
                const long ae = prof.alpha.exponent();
                const std::string aes = std::to_string(ae);
                branches.push_back(row("l < " + aes, shifted("l", ae - be)));
                branches.push_back(
                    boundary("l = " + aes, std::nullopt, 2 * ae - be));
                branches.push_back(row(aes + " < l < " + bes, shifted("2 l", -be)));
            } else {
                branches.push_back(row("l < " + bes, shifted("2 l", -be)));
            }
            branches.push_back(boundary("l = " + bes, be, std::nullopt));
            branches.push_back(row("l > " + bes, "l"));
            break;
        }
        case Regime::AlphaGreater: {
            const long ae = prof.alpha.exponent();
            const std::string aes = std::to_string(ae);
            branches.push_back(row("l < " + bes, shifted("l", ae - be)));
            branches.push_back(boundary("l = " + bes, ae, std::nullopt));
            branches.push_back(row(bes + " < l < " + aes, aes));
            branches.push_back(boundary("l = " + aes, std::nullopt, ae));
            branches.push_back(row("l > " + aes, "l"));
            break;
        }
        case Regime::AlphaEqual:
            branches.push_back(row("l != " + bes, "l"));
            branches.push_back(boundary("l = " + bes, std::nullopt, std::nullopt));
            break;
    }
    block["branches"] = branches;
    return block;
}

} // namespace

ordered_json radius_json(const Radius& r, long prime) {
    if (r.is_zero()) {
        return ordered_json{{"kind", "zero"}, {"rendered", "0"}};
    }
    return ordered_json{
        {"kind", "power"}, {"exp", r.exponent()}, {"rendered", r.rendered(prime)}};
}

ordered_json measure_json(const MeasureValue& m) {
    return ordered_json{{"raw", rational_str(m.raw)},
                        {"value", rational_str(m.value)},
                        {"clamped", m.clamped}};
}

ordered_json profile_json(const DynamicsProfile& prof, long prime) {
    ordered_json block;
    block["fixed_point"] = prof.fixed_point.str();
    block["alpha"] = radius_json(prof.alpha, prime);
    block["beta"] = radius_json(prof.beta, prime);
    block["lambda_norm"] = radius_json(prof.lambda_norm, prime);
    block["regime"] = to_string(prof.regime);
    block["fixed_point_class"] = to_string(prof.fixed_point_class);
    return block;
}

ordered_json verdict_json(const ErgodicityVerdict& v, long prime) {
    ordered_json block;
    block["theory"] = to_string(v.theory.verdict);
    block["rule"] = v.theory.rule;
    ordered_json levels = ordered_json::array();
    for (const LevelEvidence& e : v.levels) {
        levels.push_back(ordered_json{{"level", e.level},
                                      {"domain_size", e.domain_size},
                                      {"cycles", e.cycle_count},
                                      {"transitive", e.transitive}});
    }
    block["levels"] = levels;
    if (v.witness) {
        block["witness_ball"] =
            ordered_json{{"center", v.witness->center.str()},
                         {"rho_exp", v.witness->rho_exp},
                         {"rho_rendered", Radius::power(v.witness->rho_exp).rendered(prime)},
                         {"measure", measure_json(v.witness->measure)}};
    } else {
        block["witness_ball"] = nullptr;
    }
    block["disagreement"] = v.disagreement;
    return block;
}

RunOutcome run_analysis(const AnalysisConfig& config, ExecMode mode) {
    const long p = config.params.prime();
    DynamicsProfile prof = profile(config.params);
    std::vector<long> radii = resolve_radii(config, prof);

    RunOutcome outcome;
    outcome.report = report_header("analysis", config, radii);
    outcome.report["profile"] = profile_json(prof, p);
    outcome.report["invariant_radii"] = invariant_set_json(prof, p);
    outcome.report["radius_map"] = radius_map_json(prof);

    const Rng root(config.seed);
    InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);

    // Per-radius analyses run concurrently; assembly stays in list order.
    std::vector<ordered_json> blocks(radii.size());
    for_each_index(radii.size(), mode, [&](std::size_t i) {
        const long r_exp = radii[i];
        ordered_json block;
        block["r_exp"] = r_exp;
        block["rendered"] = Radius::power(r_exp).rendered(p);
        if (!inv.contains(r_exp)) {
            block["invariant"] = false;
            blocks[i] = std::move(block);
            return;
        }
        block["invariant"] = true;
        Radius displacement = rho(prof, config.params, r_exp);
        block["rho"] = radius_json(displacement, p);
        block["measure"] = measure_json(
            normalized_ball_measure(p, displacement.exponent(), r_exp));
        Rng rng = root.fork(0x7adca11 + static_cast<std::uint64_t>(i));

        // Invariance oracle: sampled sphere points must stay on the sphere.
        const int oracle_samples = 20;
        int stayed = 0;
        for (int k = 0; k < oracle_samples; ++k) {
            PadicNumber x = random_sphere_point(rng, prof.fixed_point, r_exp);
            if ((evaluate(config.params, x) - prof.fixed_point).norm() ==
                Radius::power(r_exp)) {
                ++stayed;
            }
        }
        block["invariance_oracle"] = ordered_json{{"samples", oracle_samples},
                                                  {"passed", stayed == oracle_samples}};

        VerdictOptions options;
        options.max_level = config.max_level;
        options.max_domain = config.max_domain;
        options.mode = ExecMode::Serial;  // already parallel across radii
        ErgodicityVerdict verdict = ergodicity_verdict(config.params, r_exp, options, rng);
        block["verdict"] = verdict_json(verdict, p);
        blocks[i] = std::move(block);
    });

    bool disagreement = false;
    bool oracle_failed = false;
    ordered_json radius_blocks = ordered_json::array();
    for (ordered_json& block : blocks) {
        if (block.contains("verdict") && block["verdict"]["disagreement"].get<bool>()) {
            disagreement = true;
        }
        if (block.contains("invariance_oracle") &&
            !block["invariance_oracle"]["passed"].get<bool>()) {
            oracle_failed = true;
        }
        radius_blocks.push_back(std::move(block));
    }
    outcome.report["radii"] = radius_blocks;

    MapCheckSummary checks = map_check_summary(config.params, config.map_checks,
                                               root.fork(0xc4ec5).next_u64(), mode);
    ordered_json check_blocks = ordered_json::array();
    for (const SuiteOutcome& s : checks.checks) check_blocks.push_back(suite_json(s));
    outcome.report["map_checks"] = check_blocks;
    outcome.report["all_checks_passed"] = checks.all_passed() && !oracle_failed;
    outcome.report["disagreement"] = disagreement;

    outcome.disagreement = disagreement;
    outcome.checks_failed = !checks.all_passed() || oracle_failed;
    return outcome;
}

RunOutcome run_orbit(const AnalysisConfig& config, const std::string& start_text, int steps,
                     ExecMode) {
    const long p = config.params.prime();
    PadicNumber start = PadicNumber::parse(start_text, p);
    DynamicsProfile prof = profile(config.params);

    if (steps < 0 || steps > config.orbit_cap) {
        throw ConfigError("orbit steps must be in [0, " + std::to_string(config.orbit_cap) +
                          "]; raise orbit_cap to go deeper");
    }
    OrbitLimits limits;
    limits.cap = config.orbit_cap;
    OrbitResult orb = orbit(config.params, start, steps, limits);

    RunOutcome outcome;
    outcome.report = report_header("orbit", config, resolve_radii(config, prof));
    outcome.report["start"] = start.str();
    outcome.report["steps_requested"] = steps;
    ordered_json rows = ordered_json::array();
    for (std::size_t k = 0; k < orb.points.size(); ++k) {
        const PadicNumber& x = orb.points[k];
        rows.push_back(ordered_json{{"step", k},
                                    {"value", x.str()},
                                    {"distance", radius_json((x - prof.fixed_point).norm(), p)}});
    }
    outcome.report["rows"] = rows;
    outcome.report["pole_step"] =
        orb.pole_step ? ordered_json(*orb.pole_step) : ordered_json(nullptr);
    outcome.report["truncated_at"] =
        orb.truncated_at ? ordered_json(*orb.truncated_at) : ordered_json(nullptr);
    return outcome;
}

RunOutcome run_ergodicity(const AnalysisConfig& config, std::optional<long> r_exp,
                          ExecMode mode) {
    const long p = config.params.prime();
    DynamicsProfile prof = profile(config.params);
    std::vector<long> radii =
        r_exp ? std::vector<long>{*r_exp} : resolve_radii(config, prof);

    RunOutcome outcome;
    outcome.report = report_header("ergodicity", config, radii);
    outcome.report["profile"] = profile_json(prof, p);

    const Rng root(config.seed);
    InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);
    ordered_json blocks = ordered_json::array();
    bool disagreement = false;
    for (std::size_t i = 0; i < radii.size(); ++i) {
        ordered_json block;
        block["r_exp"] = radii[i];
        block["rendered"] = Radius::power(radii[i]).rendered(p);
        if (!inv.contains(radii[i])) {
            block["invariant"] = false;
            blocks.push_back(std::move(block));
            continue;
        }
        block["invariant"] = true;
        VerdictOptions options;
        options.max_level = config.max_level;
        options.max_domain = config.max_domain;
        options.mode = mode;
        Rng rng = root.fork(0x7adca11 + static_cast<std::uint64_t>(i));
        ErgodicityVerdict verdict = ergodicity_verdict(config.params, radii[i], options, rng);
        disagreement |= verdict.disagreement;
        block["verdict"] = verdict_json(verdict, p);
        blocks.push_back(std::move(block));
    }
    outcome.report["radii"] = blocks;
    outcome.report["disagreement"] = disagreement;
    outcome.disagreement = disagreement;
    return outcome;
}

RunOutcome run_verify_report(const AnalysisConfig& config, ExecMode mode,
                             const VerifyHooks& hooks) {
    DynamicsProfile prof = profile(config.params);
    VerifyPlan plan;
    plan.seed = config.seed;
    plan.counts = config.verify_samples;
    plan.mode = mode;
    plan.hooks = hooks;
    VerifyResult result = run_verify(plan);

    RunOutcome outcome;
    outcome.report = report_header("verify", config, resolve_radii(config, prof));
    ordered_json suites = ordered_json::array();
    for (const SuiteOutcome& s : result.suites) suites.push_back(suite_json(s));
    outcome.report["suites"] = suites;
    outcome.report["all_passed"] = result.all_passed();
    outcome.checks_failed = !result.all_passed();
    return outcome;
}

int exit_code(const RunOutcome& outcome) {
    return (outcome.disagreement || outcome.checks_failed) ? 3 : 0;
}

namespace {

std::string radius_text(const ordered_json& r) {
    return r.at("rendered").get<std::string>();
}

void render_suites(std::ostringstream& out, const ordered_json& suites) {
    for (const auto& s : suites) {
        out << "  " << s.at("name").get<std::string>() << ": "
            << s.at("checks").get<int>() << " checks, "
            << s.at("failures").get<int>() << " failures\n";
        for (const auto& note : s.at("notes")) {
            out << "      " << note.get<std::string>() << "\n";
        }
    }
}

} // namespace

std::string render_text(const ordered_json& report) {
    std::ostringstream out;
    const std::string kind = report.at("kind").get<std::string>();
    const auto& config = report.at("config");
    out << report.at("tool").get<std::string>() << " " << report.at("version").get<std::string>()
        << " — " << kind << "\n";
    out << "map: f(x) = (x^2 + a x + b)/(x + c) over Q_" << config.at("p").get<long>() << "\n";
    out << "  a = " << config.at("a").get<std::string>()
        << ", b = " << config.at("b").get<std::string>()
        << ", c = " << config.at("c").get<std::string>()
        << ", seed = " << config.at("seed").get<std::uint64_t>() << "\n\n";

    if (report.contains("profile")) {
        const auto& prof = report.at("profile");
        out << "profile\n";
        out << "  fixed point x0     " << prof.at("fixed_point").get<std::string>() << "\n";
        out << "  alpha              " << radius_text(prof.at("alpha")) << "\n";
        out << "  beta               " << radius_text(prof.at("beta")) << "\n";
        out << "  |f'(x0)|           " << radius_text(prof.at("lambda_norm")) << "\n";
        out << "  regime             " << prof.at("regime").get<std::string>() << "\n";
        out << "  fixed point class  " << prof.at("fixed_point_class").get<std::string>()
            << "\n\n";
    }

    if (report.contains("invariant_radii")) {
        out << "invariant radii: " << report.at("invariant_radii").at("description").get<std::string>()
            << "\n\n";
    }

    if (report.contains("radius_map")) {
        out << "radius map (exponent l of r = p^l)\n";
        for (const auto& branch : report.at("radius_map").at("branches")) {
            out << "  " << branch.at("condition").get<std::string>();
            if (branch.at("indeterminate").get<bool>()) {
                out << "  -> indeterminate";
                if (branch.contains("lower_exp")) {
                    out << ", lower exp " << branch.at("lower_exp").get<long>();
                }
                if (branch.contains("upper_exp")) {
                    out << ", upper exp " << branch.at("upper_exp").get<long>();
                }
            } else {
                out << "  -> " << branch.at("image").get<std::string>();
            }
            out << "\n";
        }
        out << "\n";
    }

    if (kind == "analysis" || kind == "ergodicity") {
        for (const auto& block : report.at("radii")) {
            out << "r = " << block.at("rendered").get<std::string>() << " (exp "
                << block.at("r_exp").get<long>() << ")\n";
            if (!block.at("invariant").get<bool>()) {
                out << "  not an invariant sphere\n\n";
                continue;
            }
            if (block.contains("rho")) {
                out << "  rho                " << radius_text(block.at("rho")) << "\n";
                out << "  ball measure       raw " << block.at("measure").at("raw").get<std::string>()
                    << ", normalized " << block.at("measure").at("value").get<std::string>()
                    << (block.at("measure").at("clamped").get<bool>() ? " (clamped)" : "")
                    << "\n";
            }
            if (block.contains("invariance_oracle")) {
                const auto& oracle = block.at("invariance_oracle");
                out << "  invariance oracle  "
                    << (oracle.at("passed").get<bool>() ? "pass" : "FAIL") << " ("
                    << oracle.at("samples").get<int>() << " samples)\n";
            }
            const auto& verdict = block.at("verdict");
            out << "  theory             " << verdict.at("theory").get<std::string>() << " ("
                << verdict.at("rule").get<std::string>() << ")\n";
            out << "  levels             ";
            bool first = true;
            for (const auto& level : verdict.at("levels")) {
                if (!first) out << ", ";
                first = false;
                out << "n=" << level.at("level").get<int>() << ":"
                    << level.at("cycles").get<std::uint64_t>();
            }
            out << "  (cycles per level)\n";
            if (!verdict.at("witness_ball").is_null()) {
                const auto& w = verdict.at("witness_ball");
                out << "  witness ball       center " << w.at("center").get<std::string>()
                    << ", rho exp " << w.at("rho_exp").get<long>() << ", measure "
                    << w.at("measure").at("value").get<std::string>() << "\n";
            }
            if (verdict.at("disagreement").get<bool>()) {
                out << "  DISAGREEMENT between theory and oracle\n";
            }
            out << "\n";
        }
    }

    if (kind == "orbit") {
        out << "orbit from " << report.at("start").get<std::string>() << "\n";
        out << "  step  distance  value\n";
        for (const auto& row : report.at("rows")) {
            out << "  " << row.at("step").get<int>() << "     "
                << radius_text(row.at("distance")) << "     "
                << row.at("value").get<std::string>() << "\n";
        }
        if (!report.at("pole_step").is_null()) {
            out << "  pole hit at step " << report.at("pole_step").get<int>() << "\n";
        }
        if (!report.at("truncated_at").is_null()) {
            out << "  truncated by the size guard at step "
                << report.at("truncated_at").get<int>() << "\n";
        }
        out << "\n";
    }

    if (kind == "verify") {
        out << "verification suites\n";
        render_suites(out, report.at("suites"));
        out << (report.at("all_passed").get<bool>() ? "all suites passed\n"
                                                    : "SOME SUITES FAILED\n");
    }

    if (report.contains("map_checks")) {
        out << "map checks\n";
        render_suites(out, report.at("map_checks"));
        out << (report.at("all_checks_passed").get<bool>() ? "all map checks passed\n"
                                                           : "SOME MAP CHECKS FAILED\n");
    }
    return out.str();
}

namespace {

bool type_matches(const nlohmann::json& doc, const std::string& type) {
    if (type == "object") return doc.is_object();
    if (type == "array") return doc.is_array();
    if (type == "string") return doc.is_string();
    if (type == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
    if (type == "number") return doc.is_number();
    if (type == "boolean") return doc.is_boolean();
    if (type == "null") return doc.is_null();
    return false;
}

bool validate_node(const nlohmann::json& doc, const nlohmann::json& schema,
                   const std::string& path, std::string* error) {
    auto fail = [&](const std::string& message) {
        if (error) *error = path + ": " + message;
        return false;
    };

    if (schema.contains("oneOf")) {
        for (const auto& option : schema["oneOf"]) {
            std::string ignored;
            if (validate_node(doc, option, path, &ignored)) return true;
        }
        return fail("no oneOf branch matched");
    }
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(doc, t.get<std::string>());
        } else {
            for (const auto& option : t) ok |= type_matches(doc, option.get<std::string>());
        }
        if (!ok) return fail("unexpected type");
    }
    if (schema.contains("const") && doc != schema["const"]) return fail("const mismatch");
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& v : schema["enum"]) ok |= (doc == v);
        if (!ok) return fail("value not in enum");
    }
    if (schema.contains("minimum") && doc.is_number() &&
        doc.get<double>() < schema["minimum"].get<double>()) {
        return fail("below minimum");
    }
    if (doc.is_object()) {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"]) {
                if (!doc.contains(key.get<std::string>())) {
                    return fail("missing required key " + key.get<std::string>());
                }
            }
        }
        const bool closed = schema.contains("additionalProperties") &&
                            schema["additionalProperties"].is_boolean() &&
                            !schema["additionalProperties"].get<bool>();
        for (const auto& item : doc.items()) {
            if (schema.contains("properties") && schema["properties"].contains(item.key())) {
                if (!validate_node(item.value(), schema["properties"][item.key()],
                                   path + "/" + item.key(), error)) {
                    return false;
                }
            } else if (closed) {
                return fail("unexpected key " + item.key());
            }
        }
    }
    if (doc.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < doc.size(); ++i) {
            if (!validate_node(doc[i], schema["items"], path + "/" + std::to_string(i), error)) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

bool validate_against_schema(const nlohmann::json& document, const nlohmann::json& schema,
                             std::string* error) {
    return validate_node(document, schema, "$", error);
}

} // namespace padicdyn

#include "padicdyn/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "padicdyn/sphere_analysis.hpp"

namespace padicdyn {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& source, const std::string& message) {
    throw ConfigError(source + ": " + message);
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& source, const std::string& context) {
    for (const auto& item : obj.items()) {
        if (!known.contains(item.key())) {
            fail(source, "unknown key \"" + item.key() + "\" in " + context);
        }
    }
}

long get_long(const json& obj, const std::string& key, long fallback, const std::string& source) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) fail(source, "\"" + key + "\" must be an integer");
    return obj[key].get<long>();
}

int get_count(const json& obj, const std::string& key, int fallback, const std::string& source) {
    long v = get_long(obj, key, fallback, source);
    if (v < 0 || v > 1000000) fail(source, "\"" + key + "\" out of range");
    return static_cast<int>(v);
}

std::string get_rational_string(const json& obj, const std::string& key,
                                const std::string& source) {
    if (!obj.contains(key)) fail(source, "missing required key \"" + key + "\"");
    if (!obj[key].is_string()) {
        fail(source, "\"" + key + "\" must be a rational string like \"3/4\"");
    }
    return obj[key].get<std::string>();
}

} // namespace

AnalysisConfig parse_config(const json& doc, const std::string& source) {
    if (!doc.is_object()) fail(source, "config must be a JSON object");
    reject_unknown_keys(doc,
                        {"p", "a", "b", "c", "radii", "max_level", "max_domain", "orbit_cap",
                         "seed", "map_checks", "verify_samples"},
                        source, "config");

    if (!doc.contains("p")) fail(source, "missing required key \"p\"");
    if (!doc["p"].is_number_integer()) fail(source, "\"p\" must be an integer");
    long p = doc["p"].get<long>();
    if (!is_prime(p)) fail(source, "\"p\" must be prime, got " + std::to_string(p));

    auto parse_rational = [&](const std::string& key) {
        std::string text = get_rational_string(doc, key, source);
        try {
            return PadicNumber::parse(text, p);
        } catch (const Error& e) {
            fail(source, "bad value for \"" + key + "\": " + e.what());
        }
    };
    PadicNumber a = parse_rational("a");
    PadicNumber b = parse_rational("b");
    PadicNumber c = parse_rational("c");

    try {
        AnalysisConfig config{MapParams(a, b, c)};

        if (doc.contains("radii")) {
            const json& radii = doc["radii"];
            if (radii.is_string() && radii.get<std::string>() == "auto") {
                config.radii_auto = true;
            } else if (radii.is_array()) {
                config.radii_auto = false;
                for (const json& r : radii) {
                    if (!r.is_number_integer()) {
                        fail(source, "\"radii\" entries must be integer exponents");
                    }
                    config.radii.push_back(r.get<long>());
                }
                if (config.radii.empty()) fail(source, "\"radii\" must not be empty");
            } else {
                fail(source, "\"radii\" must be \"auto\" or an array of exponents");
            }
        }

        config.max_level = get_count(doc, "max_level", config.max_level, source);
        if (config.max_level < 2) fail(source, "\"max_level\" must be >= 2");
        long domain = get_long(doc, "max_domain", static_cast<long>(config.max_domain), source);
        if (domain < 2) fail(source, "\"max_domain\" must be >= 2");
        config.max_domain = static_cast<std::uint64_t>(domain);
        config.orbit_cap = get_count(doc, "orbit_cap", config.orbit_cap, source);

        if (doc.contains("seed")) {
            if (!doc["seed"].is_number_integer()) fail(source, "\"seed\" must be an integer");
            config.seed = doc["seed"].get<std::uint64_t>();
            config.seed_explicit = true;
        }

        if (doc.contains("map_checks")) {
            const json& mc = doc["map_checks"];
            if (!mc.is_object()) fail(source, "\"map_checks\" must be an object");
            reject_unknown_keys(
                mc, {"displacement", "radius_model_cases", "radius_model_steps", "isometry"},
                source, "map_checks");
            auto& counts = config.map_checks;
            counts.displacement_checks =
                get_count(mc, "displacement", counts.displacement_checks, source);
            counts.radius_model_checks =
                get_count(mc, "radius_model_cases", counts.radius_model_checks, source);
            counts.radius_model_steps =
                get_count(mc, "radius_model_steps", counts.radius_model_steps, source);
            counts.isometry_checks = get_count(mc, "isometry", counts.isometry_checks, source);
        }

        if (doc.contains("verify_samples")) {
            const json& vs = doc["verify_samples"];
            if (!vs.is_object()) fail(source, "\"verify_samples\" must be an object");
            reject_unknown_keys(vs,
                                {"norm_pairs", "displacement_pairs", "radius_model_cases",
                                 "radius_model_deep_cases", "radius_model_steps",
                                 "isometry_cases", "displacement_table_spheres",
                                 "displacement_table_points", "orbit_displacement_spheres",
                                 "orbit_displacement_steps", "p2_param_sets", "p2_max_level",
                                 "podd_param_sets", "ball_point_samples", "mod4_pairs",
                                 "mod4_max_level"},
                                source, "verify_samples");
            auto& s = config.verify_samples;
            s.norm_pairs = get_count(vs, "norm_pairs", s.norm_pairs, source);
            s.displacement_pairs =
                get_count(vs, "displacement_pairs", s.displacement_pairs, source);
            s.radius_model_cases =
                get_count(vs, "radius_model_cases", s.radius_model_cases, source);
            s.radius_model_deep_cases =
                get_count(vs, "radius_model_deep_cases", s.radius_model_deep_cases, source);
            s.radius_model_steps =
                get_count(vs, "radius_model_steps", s.radius_model_steps, source);
            s.isometry_cases = get_count(vs, "isometry_cases", s.isometry_cases, source);
            s.displacement_table_spheres = get_count(vs, "displacement_table_spheres",
                                                     s.displacement_table_spheres, source);
            s.displacement_table_points =
                get_count(vs, "displacement_table_points", s.displacement_table_points, source);
            s.orbit_displacement_spheres = get_count(vs, "orbit_displacement_spheres",
                                                     s.orbit_displacement_spheres, source);
            s.orbit_displacement_steps =
                get_count(vs, "orbit_displacement_steps", s.orbit_displacement_steps, source);
            s.p2_param_sets = get_count(vs, "p2_param_sets", s.p2_param_sets, source);
            s.p2_max_level = get_count(vs, "p2_max_level", s.p2_max_level, source);
            s.podd_param_sets = get_count(vs, "podd_param_sets", s.podd_param_sets, source);
            s.ball_point_samples =
                get_count(vs, "ball_point_samples", s.ball_point_samples, source);
            s.mod4_pairs = get_count(vs, "mod4_pairs", s.mod4_pairs, source);
            s.mod4_max_level = get_count(vs, "mod4_max_level", s.mod4_max_level, source);
        }
        return config;
    } catch (const InvalidMapParams& e) {
        fail(source, std::string("invalid map parameters: ") + e.what());
    }
}

AnalysisConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(doc, path);
}

std::vector<long> resolve_radii(const AnalysisConfig& config, const DynamicsProfile& prof) {
    std::vector<long> out;
    if (config.radii_auto) {
        InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);
        if (inv.kind() == InvariantRadiusSet::Kind::GreaterThanMax) {
            for (long l = 1; l <= 5; ++l) out.push_back(inv.threshold_exp() + l);
        } else {
            long beta = inv.threshold_exp();
            out = {beta - 2, beta - 1, beta + 1, beta + 2, beta + 3};
        }
        return out;
    }
    // Report assembly is ordered by radius exponent.
    out = config.radii;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

nlohmann::ordered_json echo_config(const AnalysisConfig& config,
                                   const std::vector<long>& resolved_radii) {
    nlohmann::ordered_json echo;
    echo["p"] = config.params.prime();
    echo["a"] = config.params.a().str();
    echo["b"] = config.params.b().str();
    echo["c"] = config.params.c().str();
    echo["radii"] = resolved_radii;
    echo["max_level"] = config.max_level;
    echo["max_domain"] = config.max_domain;
    echo["orbit_cap"] = config.orbit_cap;
    echo["seed"] = config.seed;
    echo["map_checks"] = {
        {"displacement", config.map_checks.displacement_checks},
        {"radius_model_cases", config.map_checks.radius_model_checks},
        {"radius_model_steps", config.map_checks.radius_model_steps},
        {"isometry", config.map_checks.isometry_checks},
    };
    const SampleCounts& s = config.verify_samples;
    echo["verify_samples"] = {
        {"norm_pairs", s.norm_pairs},
        {"displacement_pairs", s.displacement_pairs},
        {"radius_model_cases", s.radius_model_cases},
        {"radius_model_deep_cases", s.radius_model_deep_cases},
        {"radius_model_steps", s.radius_model_steps},
        {"isometry_cases", s.isometry_cases},
        {"displacement_table_spheres", s.displacement_table_spheres},
        {"displacement_table_points", s.displacement_table_points},
        {"orbit_displacement_spheres", s.orbit_displacement_spheres},
        {"orbit_displacement_steps", s.orbit_displacement_steps},
        {"p2_param_sets", s.p2_param_sets},
        {"p2_max_level", s.p2_max_level},
        {"podd_param_sets", s.podd_param_sets},
        {"ball_point_samples", s.ball_point_samples},
        {"mod4_pairs", s.mod4_pairs},
        {"mod4_max_level", s.mod4_max_level},
    };
    return echo;
}

} // namespace padicdyn

#include "padicdyn/verify.hpp"

#include <algorithm>
#include <array>

#include "padicdyn/modular.hpp"
#include "padicdyn/radius_dynamics.hpp"
#include "padicdyn/sampling.hpp"

namespace padicdyn {

namespace {

struct SuiteFailure : Error {
    using Error::Error;
};

void check(bool condition, const std::string& message) {
    if (!condition) throw SuiteFailure(message);
}

/// Runs body(rng, i) for every sample index, one forked rng per index, and
/// collects failures in index order. Any exception fails that sample.
template <typename Fn>
SuiteOutcome run_sweep(std::string name, std::uint64_t seed, int count, ExecMode mode, Fn&& body) {
    struct Slot {
        bool failed = false;
        std::string note;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(count));
    const Rng root(seed);
    for_each_index(slots.size(), mode, [&](std::size_t i) {
        Rng rng = root.fork(i);
        try {
            body(rng, i);
        } catch (const std::exception& e) {
            slots[i].failed = true;
            slots[i].note = e.what();
        }
    });
    SuiteOutcome outcome;
    outcome.name = std::move(name);
    outcome.checks = count;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (!slots[i].failed) continue;
        ++outcome.failures;
        if (outcome.notes.size() < 5) {
            outcome.notes.push_back("sample " + std::to_string(i) + ": " + slots[i].note);
        }
    }
    return outcome;
}

long sample_invariant_exp(Rng& rng, const DynamicsProfile& prof) {
    InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);
    if (inv.kind() == InvariantRadiusSet::Kind::GreaterThanMax) {
        return inv.threshold_exp() + rng.range(1, 4);
    }
    long beta = inv.threshold_exp();
    return rng.coin() ? beta + rng.range(1, 3) : beta - rng.range(1, 3);
}

constexpr std::array<long, 3> kSmallPrimes{2, 3, 5};
constexpr std::array<long, 3> kOddPrimes{3, 5, 7};

unsigned residue4(const PadicNumber& x) {
    return static_cast<unsigned>(rational_residue_mod(x.value(), 4));
}

} // namespace

SuiteOutcome norm_axiom_suite(std::uint64_t seed, int pairs, ExecMode mode) {
    return run_sweep("norm-axioms", seed, pairs, mode, [](Rng& rng, std::size_t i) {
        const std::array<long, 5> primes{2, 3, 5, 7, 11};
        const long p = primes[i % primes.size()];
        const int bits = 8 + static_cast<int>(i % 7) * 8;  // numerators up to 2^62
        PadicNumber x = random_rational(rng, p, bits);
        PadicNumber y = random_rational(rng, p, bits);

        check((x * y).norm() == x.norm() * y.norm(), "norm multiplicativity");
        Radius bound = std::max(x.norm(), y.norm());
        Radius sum = (x + y).norm();
        check(sum <= bound, "strong triangle inequality");
        if (x.norm() != y.norm()) {
            check(sum == bound, "equality case of the strong triangle inequality");
        }

        // Construction canonicalization: (nk)/(dk) is the same value as n/d.
        long k = 1 + static_cast<long>(rng.below(1000));
        PadicNumber scaled(
            mpq_class(x.value().get_num() * k, x.value().get_den() * k), p);
        check(scaled == x, "canonical form of scaled fraction");

        // Ultrametric nesting: y' in U_r(x) makes U_r(y') the same ball.
        long r_exp = rng.range(-3, 3);
        PadicNumber member = random_ball_point(rng, x, r_exp);
        PadicNumber probe = random_rational(rng, p, 12);
        BallSpec around_x{x, Radius::power(r_exp)};
        BallSpec around_member{member, Radius::power(r_exp)};
        check(in_ball(member, around_x), "ball point sampler stays in the ball");
        check(in_ball(probe, around_x) == in_ball(probe, around_member),
              "ultrametric balls: any member is a center");
    });
}

SuiteOutcome displacement_identity_suite(std::uint64_t seed, int cases, ExecMode mode) {
    return run_sweep("displacement-identity", seed, cases, mode, [](Rng& rng, std::size_t i) {
        const long p = kSmallPrimes[i % kSmallPrimes.size()];
        MapParams params = random_map_params(rng, p);
        PadicNumber x0 = fixed_point(params);
        for (int attempt = 0;; ++attempt) {
            PadicNumber x = random_rational(rng, p, 14);
            if (x == x0 || x == params.pole()) continue;
            Radius direct = (evaluate(params, x) - x0).norm();
            Radius factored =
                (x - x0).norm() * (x + params.a()).norm() / (x + params.c()).norm();
            check(direct == factored, "factored displacement identity at x = " + x.str());
            // The library entry point carries the same cross-check internally.
            displacement_from_fixed_point(params, x);
            break;
        }
    });
}

SuiteOutcome radius_model_suite(std::uint64_t seed, int cases, int deep_cases, int steps,
                                ExecMode mode) {
    return run_sweep("radius-model", seed, cases, mode, [=](Rng& rng, std::size_t i) {
        const long p = kSmallPrimes[i % kSmallPrimes.size()];
        const bool deep = static_cast<int>(i) < deep_cases;
        const int n = deep ? steps : 6 + static_cast<int>(rng.below(9));

        ParamGenOptions options;
        options.bits = deep ? 4 : 6;
        options.exp_lo = deep ? -1 : -3;
        options.exp_hi = deep ? 1 : 3;
        options.integer_values = deep;  // keeps the exact-orbit bit growth affordable
        MapParams params = random_map_params(rng, p, options);
        DynamicsProfile prof = profile(params);

        const long window = deep ? 1 : 4;
        for (int attempt = 0; attempt < 8; ++attempt) {
            long r_exp;
            if (i % 5 == 4) {
                // Seed exactly on a boundary sphere.
                r_exp = (rng.coin() && prof.alpha.is_power()) ? prof.alpha.exponent()
                                                              : prof.beta.exponent();
            } else {
                r_exp = prof.beta.exponent() + rng.range(-window, window);
            }
            PadicNumber offset(prime_power(p, -r_exp), p);
            PadicNumber start = prof.fixed_point + offset * random_small_unit(rng, p, 5);
            try {
                RadiusModelReport report = radius_model_check(params, start, n);
                check(report.ok, report.failure);
                return;
            } catch (const PoleHit&) {
                continue;  // the orbit ran into -c; try another start
            }
        }
        throw SuiteFailure("could not find a pole-free orbit in 8 attempts");
    });
}

SuiteOutcome isometry_suite(std::uint64_t seed, int cases, ExecMode mode) {
    return run_sweep("sphere-isometry", seed, cases, mode, [](Rng& rng, std::size_t i) {
        const long p = kSmallPrimes[i % kSmallPrimes.size()];
        MapParams params = random_map_params(rng, p);
        DynamicsProfile prof = profile(params);
        long r_exp = sample_invariant_exp(rng, prof);
        PadicNumber s = random_sphere_point(rng, prof.fixed_point, r_exp);
        long rho_exp = r_exp - rng.range(1, 3);
        PadicNumber x = random_ball_point(rng, s, rho_exp);
        check((evaluate(params, x) - evaluate(params, s)).norm() == (x - s).norm(),
              "isometry inside an invariant sphere");
    });
}

SuiteOutcome displacement_table_suite(std::uint64_t seed, int spheres, int points_per_sphere,
                                      ExecMode mode, const VerifyHooks& hooks) {
    std::function<Radius(const DynamicsProfile&, const MapParams&, long)> table =
        hooks.rho_override;
    if (!table) {
        table = [](const DynamicsProfile& prof, const MapParams& params, long r_exp) {
            return rho_table(prof, params, r_exp);
        };
    }
    return run_sweep("displacement-table", seed, spheres, mode, [=](Rng& rng, std::size_t i) {
        const std::array<long, 4> primes{2, 3, 5, 7};
        const long p = primes[i % primes.size()];
        MapParams params = random_map_params(rng, p);
        DynamicsProfile prof = profile(params);
        long r_exp = sample_invariant_exp(rng, prof);
        Radius expected = table(prof, params, r_exp);
        for (int j = 0; j < points_per_sphere; ++j) {
            PadicNumber s = random_sphere_point(rng, prof.fixed_point, r_exp);
            check((evaluate(params, s) - s).norm() == expected,
                  "displacement norm differs from the table at r_exp = " +
                      std::to_string(r_exp));
        }
    });
}

SuiteOutcome orbit_displacement_suite(std::uint64_t seed, int spheres, int steps, ExecMode mode) {
    return run_sweep("orbit-displacement", seed, spheres, mode, [=](Rng& rng, std::size_t i) {
        const long p = kSmallPrimes[i % 2];  // 2 and 3; exact orbits grow fast
        ParamGenOptions options;
        options.bits = 5;
        options.exp_lo = -2;
        options.exp_hi = 2;
        options.integer_values = true;
        MapParams params = random_map_params(rng, p, options);
        DynamicsProfile prof = profile(params);
        long r_exp = sample_invariant_exp(rng, prof);
        PadicNumber offset(prime_power(p, -r_exp), p);
        PadicNumber s = prof.fixed_point + offset * random_small_unit(rng, p, 5);

        Radius expected = rho_table(prof, params, r_exp);
        const int n = (i % 4 == 0) ? steps : std::min(steps, 12);

        OrbitNormOptions norm_options;
        norm_options.step_displacements = true;
        OrbitNormData data = orbit_norm_data(params, s, n, norm_options);
        check(!data.pole_step.has_value(), "orbit on an invariant sphere hit the pole");
        check(!data.truncated, "orbit exceeded the bit guard");
        for (const Radius& d : data.distance) {
            check(d == Radius::power(r_exp), "orbit left the invariant sphere");
        }
        for (const Radius& d : data.displacement) {
            check(d == expected, "step displacement differs from the displacement norm");
        }

        // Any strictly smaller ball around s is escaped immediately.
        BallSpec smaller{s, Radius::power(expected.exponent() - 1)};
        check(!in_ball(evaluate(params, s), smaller),
              "f(s) stayed in a ball smaller than the minimal invariant one");
        minimal_invariant_ball(prof, params, s, r_exp, rng, /*samples=*/8);
    });
}

SuiteOutcome p2_criterion_suite(std::uint64_t seed, int param_sets, int max_level,
                                ExecMode mode) {
    return run_sweep("p2-criterion-oracle", seed, param_sets, mode, [=](Rng& rng,
                                                                        std::size_t i) {
        ParamGenOptions options;
        options.regime = std::array<Regime, 3>{Regime::AlphaGreater, Regime::AlphaLess,
                                               Regime::AlphaEqual}[i % 3];
        MapParams params = random_map_params(rng, 2, options);
        DynamicsProfile prof = profile(params);

        std::vector<long> radii;
        if (prof.regime == Regime::AlphaEqual) {
            long beta = prof.beta.exponent();
            radii = {beta - 2, beta - 1, beta + 1, beta + 2};
        } else {
            long top = prof.max_exponent();
            radii = {top + 1, top + 2, top + 3};
        }

        for (long r_exp : radii) {
            ClassifyResult theory = classify(prof, params, r_exp);
            ConjugatedMap conj = conjugate_to_unit_sphere(params, r_exp);

            bool all_transitive = true;
            bool prev_transitive = true;
            for (int level = 2; level <= max_level; ++level) {
                ResidueSphereMap map = ResidueSphereMap::build(conj, level, ExecMode::Serial);
                TransitivityResult t = transitivity_check(map);
                check(prev_transitive || !t.transitive,
                      "transitivity reappeared at a finer level");
                prev_transitive = t.transitive;
                all_transitive &= t.transitive;
                if (!t.transitive && theory.verdict == TheoryVerdict::NotErgodic) break;
            }
            if (theory.verdict == TheoryVerdict::Ergodic) {
                check(all_transitive, "ergodic verdict with an intransitive level");
            } else {
                check(!all_transitive,
                      "not-ergodic verdict but every level up to " +
                          std::to_string(max_level) + " is a single cycle");
            }

            // The mod-4 criterion applied to the conjugated coefficients must
            // reproduce the closed-form verdict.
            Mod4Inputs sums = mod4_sums(conj);
            check(mod4_pattern(sums) == (theory.verdict == TheoryVerdict::Ergodic),
                  "mod-4 pattern disagrees with the closed-form verdict");
            if (conj.form() == ConjugationForm::Quadratic) {
                PadicNumber scale(prime_power(2, r_exp), 2);
                check(sums.a2 == 1 && sums.b1 == 1 &&
                          sums.a1 == residue4(scale * (prof.fixed_point + params.a())) &&
                          sums.b2 == residue4(scale * (prof.fixed_point + params.c())),
                      "mod-4 sums do not match the conjugated coefficients");
            }

            // Measure of the minimal invariant ball: exactly 1 in the ergodic case.
            Radius displacement = rho(prof, params, r_exp);
            MeasureValue measure =
                normalized_ball_measure(2, displacement.exponent(), r_exp);
            if (theory.verdict == TheoryVerdict::Ergodic) {
                check(measure.value == 1, "ergodic sphere with a proper invariant ball");
            }
        }
    });
}

SuiteOutcome podd_ball_suite(std::uint64_t seed, int param_sets, int ball_samples,
                             ExecMode mode) {
    return run_sweep("podd-ball-witness", seed, param_sets, mode, [=](Rng& rng, std::size_t i) {
        const long p = kOddPrimes[i % kOddPrimes.size()];
        const int kind = static_cast<int>(i / kOddPrimes.size()) % 3;

        ParamGenOptions options;
        std::string expected_rule;
        if (kind == 0) {
            options.regime = rng.coin() ? Regime::AlphaGreater : Regime::AlphaLess;
            expected_rule = "podd-above-max";
        } else {
            options.regime = Regime::AlphaEqual;
            options.drift_below_beta = kind == 1;
            expected_rule = kind == 1 ? "podd-drift-below-beta" : "podd-drift-at-beta-above";
        }
        MapParams params = random_map_params(rng, p, options);
        DynamicsProfile prof = profile(params);

        long r_exp;
        if (kind == 2) {
            r_exp = prof.beta.exponent() + rng.range(1, 3);
        } else {
            r_exp = sample_invariant_exp(rng, prof);
        }
        ClassifyResult theory = classify(prof, params, r_exp);
        check(theory.verdict == TheoryVerdict::NotErgodic, "covered case must be not-ergodic");
        check(theory.rule == expected_rule,
              "unexpected rule " + theory.rule + ", wanted " + expected_rule);

        Radius displacement = rho(prof, params, r_exp);
        MeasureValue measure = normalized_ball_measure(p, displacement.exponent(), r_exp);
        check(measure.value < 1, "witness ball must have measure < 1");
        check(measure.value <= mpq_class(1, p - 1), "witness measure above 1/(p-1)");

        PadicNumber s = random_sphere_point(rng, prof.fixed_point, r_exp);
        minimal_invariant_ball(prof, params, s, r_exp, rng, ball_samples);
    });
}

SuiteOutcome mod4_bruteforce_suite(std::uint64_t seed, int pairs, int max_level, ExecMode mode) {
    return run_sweep("mod4-vs-bruteforce", seed, pairs, mode, [=](Rng& rng, std::size_t) {
        auto random_poly = [&rng]() {
            std::vector<long> coeffs(1 + rng.below(5));
            long sum = 0;
            for (long& c : coeffs) {
                c = rng.range(-8, 8);
                sum += c;
            }
            if (((sum % 2) + 2) % 2 == 0) {
                // Make the value at units odd by nudging the constant term.
                coeffs[0] += coeffs[0] < 8 ? 1 : -1;
            }
            return coeffs;
        };
        std::vector<long> f = random_poly();
        std::vector<long> g = random_poly();

        bool criterion = mod4_criterion(f, g);
        bool all_transitive = true;
        for (int level = 1; level <= max_level; ++level) {
            if (!poly_pair_transitivity(f, g, level).transitive) {
                all_transitive = false;
                break;
            }
        }
        check(criterion == all_transitive,
              criterion ? "criterion says ergodic, found an intransitive level"
                        : "criterion says not ergodic, all levels are single cycles");
    });
}

VerifyResult run_verify(const VerifyPlan& plan) {
    const Rng root(plan.seed);
    auto seed_for = [&root](std::uint64_t k) { return root.fork(k).next_u64(); };
    const SampleCounts& n = plan.counts;

    VerifyResult result;
    result.suites.push_back(norm_axiom_suite(seed_for(0), n.norm_pairs, plan.mode));
    result.suites.push_back(
        displacement_identity_suite(seed_for(1), n.displacement_pairs, plan.mode));
    result.suites.push_back(radius_model_suite(seed_for(2), n.radius_model_cases,
                                               n.radius_model_deep_cases, n.radius_model_steps,
                                               plan.mode));
    result.suites.push_back(isometry_suite(seed_for(3), n.isometry_cases, plan.mode));
    result.suites.push_back(displacement_table_suite(seed_for(4), n.displacement_table_spheres,
                                                     n.displacement_table_points, plan.mode,
                                                     plan.hooks));
    result.suites.push_back(orbit_displacement_suite(seed_for(5), n.orbit_displacement_spheres,
                                                     n.orbit_displacement_steps, plan.mode));
    result.suites.push_back(
        p2_criterion_suite(seed_for(6), n.p2_param_sets, n.p2_max_level, plan.mode));
    result.suites.push_back(
        podd_ball_suite(seed_for(7), n.podd_param_sets, n.ball_point_samples, plan.mode));
    result.suites.push_back(
        mod4_bruteforce_suite(seed_for(8), n.mod4_pairs, n.mod4_max_level, plan.mode));
    return result;
}

MapCheckSummary map_check_summary(const MapParams& params, const MapCheckCounts& counts,
                                  std::uint64_t seed, ExecMode mode) {
    const Rng root(seed);
    auto seed_for = [&root](std::uint64_t k) { return root.fork(k).next_u64(); };
    DynamicsProfile prof = profile(params);
    MapCheckSummary summary;

    summary.checks.push_back(run_sweep(
        "map-displacement-identity", seed_for(0), counts.displacement_checks, mode,
        [&](Rng& rng, std::size_t) {
            for (;;) {
                PadicNumber x = random_rational(rng, params.prime(), 12);
                if (x == prof.fixed_point || x == params.pole()) continue;
                Radius direct = (evaluate(params, x) - prof.fixed_point).norm();
                Radius factored = (x - prof.fixed_point).norm() * (x + params.a()).norm() /
                                  (x + params.c()).norm();
                check(direct == factored, "factored displacement identity");
                return;
            }
        }));

    summary.checks.push_back(run_sweep(
        "map-radius-model", seed_for(1), counts.radius_model_checks, mode,
        [&](Rng& rng, std::size_t) {
            long r_exp = prof.beta.exponent() + rng.range(-3, 3);
            PadicNumber start = random_sphere_point(rng, prof.fixed_point, r_exp, 8);
            try {
                RadiusModelReport report =
                    radius_model_check(params, start, counts.radius_model_steps);
                check(report.ok, report.failure);
            } catch (const PoleHit&) {
                // A pole preimage: legitimate, nothing to model past it.
            }
        }));

    summary.checks.push_back(run_sweep(
        "map-isometry", seed_for(2), counts.isometry_checks, mode, [&](Rng& rng, std::size_t) {
            long r_exp = sample_invariant_exp(rng, prof);
            PadicNumber s = random_sphere_point(rng, prof.fixed_point, r_exp);
            PadicNumber x = random_ball_point(rng, s, r_exp - rng.range(1, 3));
            check((evaluate(params, x) - evaluate(params, s)).norm() == (x - s).norm(),
                  "isometry inside an invariant sphere");
        }));

    summary.checks.push_back(run_sweep(
        "map-invariant-spheres", seed_for(3), counts.isometry_checks, mode,
        [&](Rng& rng, std::size_t idx) {
            if (idx % 2 == 0) {
                long r_exp = sample_invariant_exp(rng, prof);
                PadicNumber x = random_sphere_point(rng, prof.fixed_point, r_exp);
                check((evaluate(params, x) - prof.fixed_point).norm() == Radius::power(r_exp),
                      "invariant sphere lost a point");
            } else {
                // A non-invariant radius: some sampled point must map off the sphere.
                InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);
                long r_exp = inv.kind() == InvariantRadiusSet::Kind::AllExceptBeta
                                 ? inv.threshold_exp()
                                 : inv.threshold_exp() - rng.range(0, 2);
                for (int tries = 0; tries < 256; ++tries) {
                    PadicNumber x = random_sphere_point(rng, prof.fixed_point, r_exp);
                    if (x == params.pole()) continue;
                    if ((evaluate(params, x) - prof.fixed_point).norm() !=
                        Radius::power(r_exp)) {
                        return;
                    }
                }
                throw SuiteFailure("no escaping point found on a non-invariant sphere");
            }
        }));
    return summary;
}

} // namespace padicdyn

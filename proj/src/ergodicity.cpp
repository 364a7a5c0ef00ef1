#include "padicdyn/ergodicity.hpp"

#include <algorithm>

#include "padicdyn/modular.hpp"
#include "padicdyn/sampling.hpp"

namespace padicdyn {

std::string to_string(TheoryVerdict v) {
    switch (v) {
        case TheoryVerdict::Ergodic: return "ergodic";
        case TheoryVerdict::NotErgodic: return "not-ergodic";
        case TheoryVerdict::Unclassified: return "unclassified";
    }
    return "?";
}

ClassifyResult classify(const DynamicsProfile& prof, const MapParams& params, long r_exp) {
    InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);
    if (!inv.contains(r_exp)) {
        throw NotInvariantRadius("classification applies to invariant spheres only");
    }
    if (params.prime() == 2) {
        bool ergodic = prof.regime != Regime::AlphaEqual && r_exp == prof.max_exponent() + 1;
        return {ergodic ? TheoryVerdict::Ergodic : TheoryVerdict::NotErgodic, "p2-iff"};
    }
    if (inv.kind() == InvariantRadiusSet::Kind::GreaterThanMax) {
        return {TheoryVerdict::NotErgodic, "podd-above-max"};
    }
    Radius drift = (params.a() - params.c()).norm();
    if (drift > prof.beta) {
        throw InternalCheckFailure("|a-c| > beta is impossible when alpha = beta");
    }
    if (drift < prof.beta) {
        return {TheoryVerdict::NotErgodic, "podd-drift-below-beta"};
    }
    if (r_exp > prof.beta.exponent()) {
        return {TheoryVerdict::NotErgodic, "podd-drift-at-beta-above"};
    }
    return {TheoryVerdict::Unclassified, "uncovered"};
}

namespace {

unsigned index_parity_sum_mod4(std::span<const long> coeffs, int parity) {
    long sum = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (static_cast<int>(i % 2) == parity) sum += coeffs[i] % 4;
    }
    return static_cast<unsigned>(((sum % 4) + 4) % 4);
}

} // namespace

Mod4Inputs mod4_sums(std::span<const long> num_coeffs, std::span<const long> den_coeffs) {
    return Mod4Inputs{index_parity_sum_mod4(num_coeffs, 1), index_parity_sum_mod4(num_coeffs, 0),
                      index_parity_sum_mod4(den_coeffs, 1), index_parity_sum_mod4(den_coeffs, 0)};
}

Mod4Inputs mod4_sums(const ConjugatedMap& conj) {
    if (conj.prime() != 2) {
        throw DomainViolation("mod-4 sums are defined for p = 2");
    }
    auto res4 = [](const PadicNumber& q) {
        return static_cast<unsigned>(rational_residue_mod(q.value(), 4));
    };
    unsigned a1 = res4(conj.num_t1());
    unsigned a2 = (res4(conj.num_t2()) + res4(conj.num_t0())) % 4;
    unsigned b1 = res4(conj.den_t1());
    unsigned b2 = res4(conj.den_t0());
    return Mod4Inputs{a1, a2, b1, b2};
}

bool mod4_pattern(const Mod4Inputs& in) {
    auto direct = [](unsigned a1, unsigned a2, unsigned b1, unsigned b2) {
        return (a1 == 1 && a2 == 2 && b1 == 0 && b2 == 1) ||
               (a1 == 3 && a2 == 2 && b1 == 0 && b2 == 3) ||
               (a1 == 1 && a2 == 0 && b1 == 2 && b2 == 1) ||
               (a1 == 3 && a2 == 0 && b1 == 2 && b2 == 3);
    };
    return direct(in.a1, in.a2, in.b1, in.b2) || direct(in.b1, in.b2, in.a1, in.a2);
}

bool mod4_criterion(std::span<const long> num_coeffs, std::span<const long> den_coeffs) {
    auto value_parity = [](std::span<const long> coeffs) {
        long sum = 0;
        for (long c : coeffs) sum += c;
        return ((sum % 2) + 2) % 2;
    };
    // f(1) and g(1) odd is exactly what it takes for R = f/g to map the
    // 2-adic unit sphere to itself.
    if (value_parity(num_coeffs) != 1 || value_parity(den_coeffs) != 1) {
        throw DomainViolation("numerator and denominator must take odd values on units");
    }
    return mod4_pattern(mod4_sums(num_coeffs, den_coeffs));
}

std::uint64_t unit_count(long prime, int level) {
    std::uint64_t pw = 1;
    for (int i = 1; i < level; ++i) pw *= static_cast<std::uint64_t>(prime);
    return pw * static_cast<std::uint64_t>(prime) - pw;
}

bool level_enumerable(long prime, int level, std::uint64_t max_domain) {
    if (level < 1) return false;
    long double modulus = 1;
    for (int i = 0; i < level; ++i) modulus *= static_cast<long double>(prime);
    if (modulus > 4.6e18L) return false;  // p^level must fit in 64 bits
    return unit_count(prime, level) <= max_domain;
}

ResidueSphereMap ResidueSphereMap::build(const ConjugatedMap& conj, int level, ExecMode mode) {
    if (level < 1) throw Error("residue level must be >= 1");
    const long p = conj.prime();
    if (!level_enumerable(p, level, std::uint64_t(1) << 28)) {
        throw Error("residue level " + std::to_string(level) + " is too large to enumerate");
    }
    std::uint64_t modulus = 1;
    for (int i = 0; i < level; ++i) modulus *= static_cast<std::uint64_t>(p);

    // Reduce the exact coefficients; they are p-adic integers for every
    // invariant radius, anything else is a hard error (NonUnitDenominator).
    const std::uint64_t n2 = rational_residue_mod(conj.num_t2().value(), modulus);
    const std::uint64_t n1 = rational_residue_mod(conj.num_t1().value(), modulus);
    const std::uint64_t n0 = rational_residue_mod(conj.num_t0().value(), modulus);
    const std::uint64_t d1 = rational_residue_mod(conj.den_t1().value(), modulus);
    const std::uint64_t d0 = rational_residue_mod(conj.den_t0().value(), modulus);

    ResidueSphereMap map(p, level, modulus);
    const std::size_t count = static_cast<std::size_t>(unit_count(p, level));
    map.next_.resize(count);

    for_each_index(count, mode, [&](std::size_t i) {
        const std::uint64_t u = map.domain_value(i);
        const std::uint64_t num =
            (mul_mod(mul_mod(u, u, modulus), n2, modulus) + mul_mod(n1, u, modulus) + n0) %
            modulus;
        const std::uint64_t den = (mul_mod(d1, u, modulus) + d0) % modulus;
        const std::uint64_t image = mul_mod(num, inv_mod(den, modulus), modulus);
        if (image % static_cast<std::uint64_t>(p) == 0) {
            throw InternalCheckFailure("conjugated map left the unit sphere at residue " +
                                       std::to_string(u));
        }
        map.next_[i] = static_cast<std::uint32_t>(map.index_of(image));
    });

    // Measure preservation at finite level: the induced map is a bijection.
    std::vector<bool> seen(count, false);
    for (std::size_t i = 0; i < count; ++i) {
        if (seen[map.next_[i]]) {
            throw InternalCheckFailure("residue map is not a bijection at level " +
                                       std::to_string(level));
        }
        seen[map.next_[i]] = true;
    }
    return map;
}

namespace {

TransitivityResult count_cycles(const std::vector<std::uint32_t>& next) {
    std::vector<bool> visited(next.size(), false);
    std::uint64_t cycles = 0;
    for (std::size_t start = 0; start < next.size(); ++start) {
        if (visited[start]) continue;
        ++cycles;
        std::size_t i = start;
        while (!visited[i]) {
            visited[i] = true;
            i = next[i];
        }
    }
    return TransitivityResult{cycles, cycles == 1};
}

} // namespace

TransitivityResult transitivity_check(const ResidueSphereMap& map) {
    std::vector<std::uint32_t> next(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) {
        next[i] = static_cast<std::uint32_t>(map.image_index(i));
    }
    return count_cycles(next);
}

TransitivityResult poly_pair_transitivity(std::span<const long> num_coeffs,
                                          std::span<const long> den_coeffs, int level) {
    const std::uint64_t modulus = std::uint64_t(1) << level;
    auto eval = [modulus](std::span<const long> coeffs, std::uint64_t t) {
        std::uint64_t acc = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            long c = coeffs[i] % static_cast<long>(modulus);
            std::uint64_t cu =
                static_cast<std::uint64_t>(c < 0 ? c + static_cast<long>(modulus) : c);
            acc = (mul_mod(acc, t, modulus) + cu) % modulus;
        }
        return acc;
    };
    if (eval(num_coeffs, 1) % 2 != 1 || eval(den_coeffs, 1) % 2 != 1) {
        throw DomainViolation("numerator and denominator must take odd values on units");
    }

    const std::size_t count = static_cast<std::size_t>(modulus / 2);
    std::vector<std::uint32_t> next(count);
    std::vector<bool> hit(count, false);
    bool permutation = true;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t t = 2 * i + 1;
        const std::uint64_t image =
            mul_mod(eval(num_coeffs, t), inv_mod(eval(den_coeffs, t), modulus), modulus);
        const std::size_t j = static_cast<std::size_t>(image / 2);
        next[i] = static_cast<std::uint32_t>(j);
        if (hit[j]) permutation = false;
        hit[j] = true;
    }
    if (!permutation) {
        // Not injective at this level, so no orbit can visit every residue.
        return TransitivityResult{0, false};
    }
    return count_cycles(next);
}

ErgodicityVerdict ergodicity_verdict(const MapParams& params, long r_exp,
                                     const VerdictOptions& options, Rng& rng) {
    if (options.max_level < 2) throw Error("max_level must be >= 2");
    DynamicsProfile prof = profile(params);
    ErgodicityVerdict out{classify(prof, params, r_exp), {}, std::nullopt, false};

    ConjugatedMap conj = conjugate_to_unit_sphere(params, r_exp);
    bool any_intransitive = false;
    bool all_transitive = true;
    for (int level = 2; level <= options.max_level; ++level) {
        if (!level_enumerable(params.prime(), level, options.max_domain)) break;
        ResidueSphereMap map = ResidueSphereMap::build(conj, level, options.mode);
        TransitivityResult t = transitivity_check(map);
        if (any_intransitive && t.transitive) {
            // Cycles only refine as the level grows; a transitive level after an
            // intransitive one cannot happen.
            throw InternalCheckFailure("cycle count dropped between levels");
        }
        any_intransitive |= !t.transitive;
        all_transitive &= t.transitive;
        out.levels.push_back(LevelEvidence{level, unit_count(params.prime(), level),
                                           t.cycle_count, t.transitive});
    }

    Radius displacement = rho(prof, params, r_exp);
    MeasureValue measure =
        normalized_ball_measure(params.prime(), displacement.exponent(), r_exp);
    if (measure.value < 1) {
        PadicNumber s = random_sphere_point(rng, prof.fixed_point, r_exp);
        BallSpec ball =
            minimal_invariant_ball(prof, params, s, r_exp, rng, options.ball_samples);
        out.witness = WitnessBall{ball.center, ball.radius.exponent(), measure};
    }

    if (out.theory.verdict == TheoryVerdict::Ergodic && any_intransitive) {
        out.disagreement = true;
    }
    if (out.theory.verdict == TheoryVerdict::NotErgodic && all_transitive && !out.witness) {
        out.disagreement = true;
    }
    return out;
}

} // namespace padicdyn

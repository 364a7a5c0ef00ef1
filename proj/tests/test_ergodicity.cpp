#include <doctest.h>

#include <array>
#include <vector>

#include "padicdyn/ergodicity.hpp"
#include "padicdyn/modular.hpp"
#include "padicdyn/sampling.hpp"

using namespace padicdyn;

namespace {

MapParams golden() {
    return MapParams(PadicNumber::integer(0, 2), PadicNumber::integer(1, 2),
                     PadicNumber::integer(1, 2));
}

} // namespace

TEST_CASE("closed-form verdicts for p = 2") {
    MapParams g = golden();
    DynamicsProfile prof = profile(g);

    ClassifyResult at_double = classify(prof, g, 1);  // r = 2 max{alpha, beta}
    CHECK(at_double.verdict == TheoryVerdict::Ergodic);
    CHECK(at_double.rule == "p2-iff");

    CHECK(classify(prof, g, 2).verdict == TheoryVerdict::NotErgodic);
    CHECK(classify(prof, g, 5).verdict == TheoryVerdict::NotErgodic);
    CHECK_THROWS_AS(classify(prof, g, 0), NotInvariantRadius);
}

TEST_CASE("closed-form verdicts for p >= 3") {
    Rng rng(11);
    ParamGenOptions options;
    options.regime = Regime::AlphaGreater;
    MapParams params = random_map_params(rng, 3, options);
    DynamicsProfile prof = profile(params);
    ClassifyResult r = classify(prof, params, prof.max_exponent() + 2);
    CHECK(r.verdict == TheoryVerdict::NotErgodic);
    CHECK(r.rule == "podd-above-max");

    // alpha = beta with |a - c| = beta: below beta the known rules say nothing.
    ParamGenOptions eq;
    eq.regime = Regime::AlphaEqual;
    eq.drift_below_beta = false;
    MapParams uncovered = random_map_params(rng, 3, eq);
    DynamicsProfile up = profile(uncovered);
    ClassifyResult below = classify(up, uncovered, up.beta.exponent() - 1);
    CHECK(below.verdict == TheoryVerdict::Unclassified);
    CHECK(below.rule == "uncovered");
    ClassifyResult above = classify(up, uncovered, up.beta.exponent() + 1);
    CHECK(above.verdict == TheoryVerdict::NotErgodic);
    CHECK(above.rule == "podd-drift-at-beta-above");
}

TEST_CASE("mod-4 sums and patterns") {
    // f(t) = 2t^2 + t, g(t) = 1
    std::array<long, 3> f1{0, 1, 2};
    std::array<long, 1> g1{1};
    Mod4Inputs s1 = mod4_sums(f1, g1);
    CHECK(s1.a1 == 1);
    CHECK(s1.a2 == 2);
    CHECK(s1.b1 == 0);
    CHECK(s1.b2 == 1);
    CHECK(mod4_criterion(f1, g1));

    // f(t) = t + 2 (a translation): ergodic
    std::array<long, 2> f2{2, 1};
    CHECK(mod4_criterion(f2, g1));

    // f(t) = t (the identity): not ergodic
    std::array<long, 2> f3{0, 1};
    Mod4Inputs s3 = mod4_sums(f3, g1);
    CHECK(s3.a1 == 1);
    CHECK(s3.a2 == 0);
    CHECK(s3.b1 == 0);
    CHECK(s3.b2 == 1);
    CHECK(!mod4_criterion(f3, g1));

    // interchanged case: swap numerator and denominator of an ergodic pair
    CHECK(mod4_pattern(Mod4Inputs{0, 1, 1, 2}));

    // domain violation: even value at units
    std::array<long, 2> even{1, 1};  // f(1) = 2
    CHECK_THROWS_AS(mod4_criterion(even, g1), DomainViolation);
}

TEST_CASE("residue map at level 1 is the one-point map") {
    ConjugatedMap conj = conjugate_to_unit_sphere(golden(), 1);
    ResidueSphereMap map = ResidueSphereMap::build(conj, 1);
    REQUIRE(map.size() == 1);
    CHECK(map.domain_value(0) == 1);
    CHECK(map.image_index(0) == 0);
    CHECK(transitivity_check(map).transitive);
}

TEST_CASE("residue map of the worked instance at level 3") {
    // h(t) = (t^2 + 2t)/(t + 4) on odd residues mod 8: 1 -> 7 -> 5 -> 3 -> 1.
    ConjugatedMap conj = conjugate_to_unit_sphere(golden(), 1);
    ResidueSphereMap map = ResidueSphereMap::build(conj, 3);
    REQUIRE(map.size() == 4);
    auto image_of = [&](std::uint64_t u) {
        return map.domain_value(map.image_index(map.index_of(u)));
    };
    CHECK(image_of(1) == 7);
    CHECK(image_of(7) == 5);
    CHECK(image_of(5) == 3);
    CHECK(image_of(3) == 1);
    TransitivityResult t = transitivity_check(map);
    CHECK(t.cycle_count == 1);
    CHECK(t.transitive);
}

TEST_CASE("serial and parallel residue-map builds are identical") {
    Rng rng(21);
    for (int i = 0; i < 12; ++i) {
        long p = std::array<long, 3>{2, 3, 5}[i % 3];
        MapParams params = random_map_params(rng, p);
        DynamicsProfile prof = profile(params);
        long l = prof.max_exponent() + 1 + static_cast<long>(rng.below(2));
        ConjugatedMap conj = conjugate_to_unit_sphere(params, l);
        int level = 2 + static_cast<int>(rng.below(5));
        ResidueSphereMap serial = ResidueSphereMap::build(conj, level, ExecMode::Serial);
        ResidueSphereMap parallel = ResidueSphereMap::build(conj, level, ExecMode::Parallel);
        REQUIRE(serial.size() == parallel.size());
        for (std::size_t k = 0; k < serial.size(); ++k) {
            CHECK(serial.image_index(k) == parallel.image_index(k));
        }
    }
}

TEST_CASE("unit counts and level budget") {
    CHECK(unit_count(2, 1) == 1);
    CHECK(unit_count(2, 12) == 2048);
    CHECK(unit_count(3, 12) == 354294);
    CHECK(level_enumerable(2, 12, 1 << 21));
    CHECK(level_enumerable(3, 12, 1 << 21));
    CHECK(!level_enumerable(5, 12, 1 << 21));  // 4 * 5^11 units blow the budget
    CHECK(!level_enumerable(7, 30, std::uint64_t(1) << 40));  // 7^30 overflows 64 bits
}

TEST_CASE("polynomial-pair transitivity oracle") {
    std::array<long, 2> translation{2, 1};  // t + 2
    std::array<long, 1> one{1};
    for (int level = 1; level <= 10; ++level) {
        CHECK(poly_pair_transitivity(translation, one, level).transitive);
    }
    std::array<long, 2> identity{0, 1};
    TransitivityResult t = poly_pair_transitivity(identity, one, 3);
    CHECK(t.cycle_count == 4);  // every odd residue mod 8 is fixed
    CHECK(!t.transitive);

    std::array<long, 3> square{0, 0, 1};  // t^2 is not injective on odd residues
    CHECK(!poly_pair_transitivity(square, one, 4).transitive);

    std::array<long, 2> even{1, 1};
    CHECK_THROWS_AS(poly_pair_transitivity(even, one, 3), DomainViolation);
}

TEST_CASE("verdict for the worked instance") {
    MapParams g = golden();
    VerdictOptions options;
    Rng rng(77);

    ErgodicityVerdict ergodic = ergodicity_verdict(g, 1, options, rng);
    CHECK(ergodic.theory.verdict == TheoryVerdict::Ergodic);
    CHECK(!ergodic.disagreement);
    REQUIRE(ergodic.levels.size() == 11);  // levels 2..12
    for (const LevelEvidence& e : ergodic.levels) {
        CHECK(e.cycle_count == 1);
        CHECK(e.transitive);
    }
    CHECK(!ergodic.witness.has_value());  // no proper invariant ball exists

    ErgodicityVerdict not_ergodic = ergodicity_verdict(g, 2, options, rng);
    CHECK(not_ergodic.theory.verdict == TheoryVerdict::NotErgodic);
    CHECK(!not_ergodic.disagreement);
    REQUIRE(not_ergodic.witness.has_value());
    CHECK(not_ergodic.witness->rho_exp == 0);  // U_1(s)
    CHECK(not_ergodic.witness->measure.value == mpq_class(1, 2));
    bool some_intransitive = false;
    for (const LevelEvidence& e : not_ergodic.levels) some_intransitive |= !e.transitive;
    CHECK(some_intransitive);
}

TEST_CASE("verdict witness for p = 3 above the max") {
    Rng rng(13);
    ParamGenOptions options;
    options.regime = Regime::AlphaLess;
    options.allow_zero_alpha = false;
    MapParams params = random_map_params(rng, 3, options);
    DynamicsProfile prof = profile(params);

    VerdictOptions vopts;
    vopts.max_level = 6;
    ErgodicityVerdict v = ergodicity_verdict(params, prof.max_exponent() + 1, vopts, rng);
    CHECK(v.theory.verdict == TheoryVerdict::NotErgodic);
    CHECK(v.theory.rule == "podd-above-max");
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->measure.value <= mpq_class(1, 2));  // <= 1/(p-1)
    CHECK(!v.disagreement);
}

TEST_CASE("level evidence is monotone") {
    // Once a level splits into several cycles, finer levels stay split.
    Rng rng(99);
    for (int i = 0; i < 10; ++i) {
        MapParams params = random_map_params(rng, 2);
        DynamicsProfile prof = profile(params);
        VerdictOptions options;
        options.max_level = 9;
        ErgodicityVerdict v =
            ergodicity_verdict(params, prof.max_exponent() + 2, options, rng);
        bool seen_intransitive = false;
        for (const LevelEvidence& e : v.levels) {
            if (seen_intransitive) CHECK(!e.transitive);
            seen_intransitive |= !e.transitive;
        }
        CHECK(seen_intransitive);  // r = 4 max{alpha,beta} is never ergodic for p = 2
    }
}

TEST_CASE("conjugated-map mod-4 sums match the parameter shifts") {
    Rng rng(123);
    for (int i = 0; i < 40; ++i) {
        ParamGenOptions options;
        options.regime = i % 2 == 0 ? Regime::AlphaGreater : Regime::AlphaLess;
        MapParams params = random_map_params(rng, 2, options);
        DynamicsProfile prof = profile(params);
        long l = prof.max_exponent() + rng.range(1, 3);
        ConjugatedMap conj = conjugate_to_unit_sphere(params, l);
        REQUIRE(conj.form() == ConjugationForm::Quadratic);

        Mod4Inputs sums = mod4_sums(conj);
        PadicNumber scale(prime_power(2, l), 2);
        // numerator: t^2 + 2^l(x0+a) t, denominator: t + 2^l(x0+c)
        PadicNumber a_shift = scale * (prof.fixed_point + params.a());
        PadicNumber c_shift = scale * (prof.fixed_point + params.c());
        CHECK(sums.a2 == 1);
        CHECK(sums.b1 == 1);
        CHECK(sums.a1 == rational_residue_mod(a_shift.value(), 4));
        CHECK(sums.b2 == rational_residue_mod(c_shift.value(), 4));
        CHECK(a_shift == conj.num_t1());
        CHECK(c_shift == conj.den_t0());

        // criterion on the conjugated coefficients reproduces the verdict
        bool ergodic = classify(prof, params, l).verdict == TheoryVerdict::Ergodic;
        CHECK(mod4_pattern(sums) == ergodic);
    }
}

#include <doctest.h>

#include "padicdyn/sphere_analysis.hpp"
#include "padicdyn/sampling.hpp"

using namespace padicdyn;

namespace {

MapParams golden() {
    return MapParams(PadicNumber::integer(0, 2), PadicNumber::integer(1, 2),
                     PadicNumber::integer(1, 2));
}

// p=2, a=0, b=4, c=4: x0 = 1, alpha = beta = 1, |a-c| = 1/4.
MapParams equal_drift() {
    return MapParams(PadicNumber::integer(0, 2), PadicNumber::integer(4, 2),
                     PadicNumber::integer(4, 2));
}

} // namespace

TEST_CASE("invariant radius sets") {
    DynamicsProfile g = profile(golden());
    InvariantRadiusSet inv = InvariantRadiusSet::from_profile(g);
    CHECK(inv.kind() == InvariantRadiusSet::Kind::GreaterThanMax);
    CHECK(inv.threshold_exp() == 0);
    CHECK(inv.contains(1));
    CHECK(inv.contains(7));
    CHECK(!inv.contains(0));   // r = alpha
    CHECK(!inv.contains(-1));  // r = beta

    DynamicsProfile e = profile(equal_drift());
    REQUIRE(e.regime == Regime::AlphaEqual);
    InvariantRadiusSet inv2 = InvariantRadiusSet::from_profile(e);
    CHECK(inv2.kind() == InvariantRadiusSet::Kind::AllExceptBeta);
    CHECK(inv2.threshold_exp() == 0);
    CHECK(inv2.contains(-3));
    CHECK(inv2.contains(2));
    CHECK(!inv2.contains(0));
}

TEST_CASE("displacement norm table") {
    MapParams g = golden();
    DynamicsProfile gp = profile(g);
    // alpha != beta: rho = max{alpha, beta} on every invariant sphere
    CHECK(rho(gp, g, 1) == Radius::power(0));
    CHECK(rho(gp, g, 4) == Radius::power(0));

    MapParams e = equal_drift();
    DynamicsProfile ep = profile(e);
    // |a-c| = 2^-2, beta = 2^0: below beta rho = |a-c| r / beta
    CHECK(rho(ep, e, -1) == Radius::power(-3));
    // above beta rho = |a-c|
    CHECK(rho(ep, e, 2) == Radius::power(-2));

    CHECK_THROWS_AS(rho(gp, g, 0), NotInvariantRadius);
    CHECK_THROWS_AS(rho(ep, e, 0), NotInvariantRadius);
}

TEST_CASE("displacement norm is constant over the sphere") {
    Rng rng(60);
    MapParams e = equal_drift();
    DynamicsProfile ep = profile(e);
    for (long r_exp : {-2L, -1L, 1L, 3L}) {
        Radius expected = rho_table(ep, e, r_exp);
        for (int i = 0; i < 25; ++i) {
            PadicNumber s = random_sphere_point(rng, ep.fixed_point, r_exp);
            CHECK((evaluate(e, s) - s).norm() == expected);
        }
    }
}

TEST_CASE("minimal invariant ball of the worked instance") {
    MapParams g = golden();
    DynamicsProfile gp = profile(g);
    Rng rng(1);
    PadicNumber s = PadicNumber::ratio(5, 4, 2);  // x0 + 1/4 lies on S_4(x0)
    BallSpec ball = minimal_invariant_ball(gp, g, s, 2, rng);
    CHECK(ball.center == s);
    CHECK(ball.radius == Radius::power(0));  // U_1(5/4)

    // f(5/4) = 41/36 stays in the ball: |41/36 - 5/4|_2 = |-1/9|_2 = 1 = rho.
    PadicNumber image = evaluate(g, s);
    CHECK(image == PadicNumber::ratio(41, 36, 2));
    CHECK((image - s).norm() == Radius::power(0));
    CHECK(in_ball(image, ball));

    CHECK_THROWS_AS(minimal_invariant_ball(gp, g, PadicNumber::integer(5, 2), 2, rng),
                    NotOnSphere);  // |5 - x0| = 1/4, not 4
    CHECK_THROWS_AS(minimal_invariant_ball(gp, g, PadicNumber::integer(2, 2), 0, rng),
                    NotInvariantRadius);
}

TEST_CASE("displacement stays constant along orbits") {
    MapParams g = golden();
    DynamicsProfile gp = profile(g);
    Rng rng(2);
    for (long r_exp : {1L, 2L, 3L}) {
        Radius expected = rho_table(gp, g, r_exp);
        PadicNumber offset(prime_power(2, -r_exp), 2);
        PadicNumber s = gp.fixed_point + offset * random_small_unit(rng, 2, 5);
        OrbitNormOptions options;
        options.step_displacements = true;
        OrbitNormData data = orbit_norm_data(g, s, 12, options);
        REQUIRE(!data.pole_step.has_value());
        for (const Radius& d : data.displacement) CHECK(d == expected);
    }
}

TEST_CASE("smaller balls around a sphere point are not invariant") {
    MapParams g = golden();
    DynamicsProfile gp = profile(g);
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        long r_exp = 1 + static_cast<long>(rng.below(3));
        PadicNumber s = random_sphere_point(rng, gp.fixed_point, r_exp);
        Radius displacement = rho_table(gp, g, r_exp);
        BallSpec smaller{s, Radius::power(displacement.exponent() - 1)};
        CHECK(!in_ball(evaluate(g, s), smaller));  // f(s) escapes immediately
    }
}

TEST_CASE("normalized ball measures") {
    MeasureValue full = normalized_ball_measure(2, 0, 1);  // p=2, rho=1, r=2
    CHECK(full.value == 1);
    CHECK(full.raw == 1);
    CHECK(!full.clamped);

    MeasureValue half = normalized_ball_measure(2, 0, 2);  // p=2, rho=1, r=4
    CHECK(half.value == mpq_class(1, 2));

    MeasureValue third_prime = normalized_ball_measure(3, 0, 1);  // p=3, rho=1, r=3
    CHECK(third_prime.value == mpq_class(1, 2));

    // rho = r: the ball covers the sphere, raw value p/(p-1) is clamped.
    MeasureValue covering = normalized_ball_measure(3, 2, 2);
    CHECK(covering.clamped);
    CHECK(covering.value == 1);
    CHECK(covering.raw == mpq_class(3, 2));

    CHECK_THROWS_AS(normalized_ball_measure(2, 3, 2), InvalidRadiusPair);
}

TEST_CASE("sphere Haar mass") {
    CHECK(sphere_haar_mass(2, 1) == 1);                 // 2 (1 - 1/2)
    CHECK(sphere_haar_mass(3, 0) == mpq_class(2, 3));   // 1 - 1/3
    CHECK(sphere_haar_mass(5, -1) == mpq_class(4, 25)); // (1/5)(1 - 1/5)

    // The normalized measure is the ratio of ball mass to sphere mass.
    mpq_class ball_mass = prime_power(2, 0);
    CHECK(normalized_ball_measure(2, 0, 2).value == ball_mass / sphere_haar_mass(2, 2));
}

TEST_CASE("invariance oracle on random maps") {
    Rng rng(4);
    for (int i = 0; i < 40; ++i) {
        long p = std::array<long, 3>{2, 3, 5}[i % 3];
        MapParams params = random_map_params(rng, p);
        DynamicsProfile prof = profile(params);
        InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);

        long r_exp = inv.kind() == InvariantRadiusSet::Kind::GreaterThanMax
                         ? inv.threshold_exp() + rng.range(1, 6)
                         : inv.threshold_exp() + rng.range(1, 6) * (rng.coin() ? 1 : -1);
        REQUIRE(inv.contains(r_exp));
        for (int j = 0; j < 25; ++j) {
            PadicNumber x = random_sphere_point(rng, prof.fixed_point, r_exp);
            CHECK((evaluate(params, x) - prof.fixed_point).norm() == Radius::power(r_exp));
        }

        // AlphaLess: below beta and off the boundaries, every point leaves the sphere.
        if (prof.regime == Regime::AlphaLess && prof.alpha.is_power()) {
            long bad = prof.alpha.exponent() +
                       (prof.beta.exponent() - prof.alpha.exponent()) / 2;
            if (bad != prof.alpha.exponent() && bad != prof.beta.exponent()) {
                PadicNumber x = random_sphere_point(rng, prof.fixed_point, bad);
                CHECK((evaluate(params, x) - prof.fixed_point).norm() != Radius::power(bad));
            }
        }
    }
}

TEST_CASE("image balls keep their radius inside invariant spheres") {
    Rng rng(5);
    for (int i = 0; i < 30; ++i) {
        long p = std::array<long, 3>{2, 3, 5}[i % 3];
        MapParams params = random_map_params(rng, p);
        DynamicsProfile prof = profile(params);
        long r_exp = profile(params).max_exponent() + rng.range(1, 3);
        PadicNumber s = random_sphere_point(rng, prof.fixed_point, r_exp);
        long rho_exp = r_exp - rng.range(1, 3);

        // x in U_rho(s) maps to U_rho(f(s)) at the same distance from f(s).
        PadicNumber x = random_ball_point(rng, s, rho_exp);
        PadicNumber fx = evaluate(params, x);
        PadicNumber fs = evaluate(params, s);
        CHECK((fx - fs).norm() == (x - s).norm());
        CHECK(in_ball(fx, BallSpec{fs, Radius::power(rho_exp)}));
    }
}

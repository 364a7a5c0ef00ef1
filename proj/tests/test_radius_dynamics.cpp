#include <doctest.h>

#include "padicdyn/radius_dynamics.hpp"
#include "padicdyn/sampling.hpp"

using namespace padicdyn;

namespace {

RadiusMapSpec spec_of(Regime regime, Radius alpha, Radius beta) {
    return RadiusMapSpec{regime, alpha, beta};
}

} // namespace

TEST_CASE("alpha-less branches") {
    // alpha = p^-1, beta = p^0
    RadiusMapSpec spec = spec_of(Regime::AlphaLess, Radius::power(-1), Radius::power(0));

    RadiusResult below = radius_step(spec, Radius::power(-3));
    CHECK(below.is_determined());
    CHECK(below.value() == Radius::power(-4));  // (alpha/beta) r

    RadiusResult at_alpha = radius_step(spec, Radius::power(-1));
    CHECK(!at_alpha.is_determined());
    CHECK(!at_alpha.lower_bound().has_value());
    CHECK(at_alpha.upper_bound() == Radius::power(-2));  // alpha^2 / beta

    RadiusResult between = radius_step(spec, Radius::power(5));
    CHECK(between.value() == Radius::power(5));  // r > beta is fixed

    RadiusResult at_beta = radius_step(spec, Radius::power(0));
    CHECK(!at_beta.is_determined());
    CHECK(at_beta.lower_bound() == Radius::power(0));  // beta* >= beta
    CHECK(!at_beta.upper_bound().has_value());
}

TEST_CASE("alpha-less middle branch squares the radius") {
    // alpha = p^-3, beta = p^2; between them r -> r^2/beta
    RadiusMapSpec spec = spec_of(Regime::AlphaLess, Radius::power(-3), Radius::power(2));
    CHECK(radius_step(spec, Radius::power(0)).value() == Radius::power(-2));
    CHECK(radius_step(spec, Radius::power(1)).value() == Radius::power(0));
}

TEST_CASE("alpha-greater branches") {
    // alpha = p^0, beta = p^-1
    RadiusMapSpec spec = spec_of(Regime::AlphaGreater, Radius::power(0), Radius::power(-1));

    CHECK(radius_step(spec, Radius::power(1)).value() == Radius::power(1));   // r > alpha
    CHECK(radius_step(spec, Radius::power(-4)).value() == Radius::power(-3)); // (a/b) r

    RadiusResult at_beta = radius_step(spec, Radius::power(-1));
    CHECK(!at_beta.is_determined());
    CHECK(at_beta.lower_bound() == Radius::power(0));  // >= alpha

    RadiusResult at_alpha = radius_step(spec, Radius::power(0));
    CHECK(!at_alpha.is_determined());
    CHECK(at_alpha.upper_bound() == Radius::power(0));  // <= alpha

    // between beta and alpha the image is the constant alpha
    RadiusMapSpec wide = spec_of(Regime::AlphaGreater, Radius::power(3), Radius::power(-2));
    CHECK(radius_step(wide, Radius::power(0)).value() == Radius::power(3));
}

TEST_CASE("alpha-equal branches") {
    RadiusMapSpec spec = spec_of(Regime::AlphaEqual, Radius::power(1), Radius::power(1));
    CHECK(radius_step(spec, Radius::power(4)).value() == Radius::power(4));
    CHECK(radius_step(spec, Radius::power(-2)).value() == Radius::power(-2));
    RadiusResult boundary = radius_step(spec, Radius::power(1));
    CHECK(!boundary.is_determined());
    CHECK(!boundary.lower_bound().has_value());
    CHECK(!boundary.upper_bound().has_value());
}

TEST_CASE("zero radius is rejected") {
    RadiusMapSpec spec = spec_of(Regime::AlphaEqual, Radius::power(0), Radius::power(0));
    CHECK_THROWS_AS(radius_step(spec, Radius::zero()), ZeroRadius);
}

TEST_CASE("degenerate alpha = 0 leaves only the upper branches") {
    RadiusMapSpec spec = spec_of(Regime::AlphaLess, Radius::zero(), Radius::power(0));
    CHECK(radius_step(spec, Radius::power(-5)).value() == Radius::power(-10));  // r^2/beta
    CHECK(radius_step(spec, Radius::power(2)).value() == Radius::power(2));
    CHECK(!radius_step(spec, Radius::power(0)).is_determined());
}

TEST_CASE("iteration is constant on invariant radii") {
    RadiusMapSpec spec = spec_of(Regime::AlphaGreater, Radius::power(0), Radius::power(-1));
    auto seq = iterate_radius(spec, Radius::power(2), 10);
    REQUIRE(seq.size() == 10);
    for (const RadiusResult& r : seq) {
        CHECK(r.is_determined());
        CHECK(r.value() == Radius::power(2));
    }
}

TEST_CASE("iteration stops at the first boundary") {
    // AlphaGreater with r < beta climbs by alpha/beta per step until it hits beta.
    RadiusMapSpec spec = spec_of(Regime::AlphaGreater, Radius::power(1), Radius::power(0));
    auto seq = iterate_radius(spec, Radius::power(-3), 10);
    REQUIRE(seq.size() == 4);  // climbs -2, -1, 0 and terminates at the beta boundary
    CHECK(seq[0].value() == Radius::power(-2));
    CHECK(seq[1].value() == Radius::power(-1));
    CHECK(seq[2].value() == Radius::power(0));
    CHECK(!seq[3].is_determined());
}

TEST_CASE("doubling exponent gap in the attracting middle region") {
    // AlphaLess middle branch: exponents follow e -> 2e - beta_exp, matching the
    // exact orbit of the worked example (norms 2^-1, 2^-2, 2^-4, 2^-8).
    MapParams params(PadicNumber::integer(1, 2), PadicNumber::integer(1, 2),
                     PadicNumber::integer(0, 2));
    DynamicsProfile prof = profile(params);
    RadiusMapSpec spec = RadiusMapSpec::from_profile(prof);

    OrbitNormData data = orbit_norm_data(params, PadicNumber::integer(1, 2), 4);
    Radius r = data.distance[0];
    for (std::size_t k = 1; k < data.distance.size(); ++k) {
        RadiusResult step = radius_step(spec, r);
        REQUIRE(step.is_determined());
        CHECK(step.value() == data.distance[k]);
        r = step.value();
    }
}

TEST_CASE("radius map grows strictly below alpha in the repelling regime") {
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        long beta_exp = rng.range(-5, 5);
        long alpha_exp = beta_exp + rng.range(1, 5);
        RadiusMapSpec spec =
            spec_of(Regime::AlphaGreater, Radius::power(alpha_exp), Radius::power(beta_exp));
        long r_exp = alpha_exp - rng.range(1, 8);
        if (r_exp == beta_exp) continue;  // boundary
        RadiusResult step = radius_step(spec, Radius::power(r_exp));
        REQUIRE(step.is_determined());
        CHECK(step.value() > Radius::power(r_exp));
    }
}

TEST_CASE("radius map fixes every invariant radius") {
    Rng rng(18);
    for (int i = 0; i < 200; ++i) {
        long beta_exp = rng.range(-5, 5);
        bool equal = i % 3 == 0;
        long alpha_exp = equal ? beta_exp : beta_exp + rng.range(-4, 4);
        Regime regime = alpha_exp == beta_exp  ? Regime::AlphaEqual
                        : alpha_exp < beta_exp ? Regime::AlphaLess
                                               : Regime::AlphaGreater;
        RadiusMapSpec spec =
            spec_of(regime, Radius::power(alpha_exp), Radius::power(beta_exp));
        long top = std::max(alpha_exp, beta_exp);
        long r_exp = regime == Regime::AlphaEqual
                         ? beta_exp + rng.range(1, 6) * (rng.coin() ? 1 : -1)
                         : top + rng.range(1, 6);
        RadiusResult step = radius_step(spec, Radius::power(r_exp));
        REQUIRE(step.is_determined());
        CHECK(step.value() == Radius::power(r_exp));
    }
}

TEST_CASE("radius model check on random parameters") {
    Rng rng(2025);
    int boundary_hits = 0;
    for (int i = 0; i < 120; ++i) {
        long p = std::array<long, 3>{2, 3, 5}[i % 3];
        ParamGenOptions options;
        options.bits = 6;
        MapParams params = random_map_params(rng, p, options);
        DynamicsProfile prof = profile(params);
        long r_exp = prof.beta.exponent() + rng.range(-3, 3);
        PadicNumber start = random_sphere_point(rng, prof.fixed_point, r_exp, 6);
        try {
            RadiusModelReport report = radius_model_check(params, start, 10);
            CHECK(report.ok);
            if (report.hit_boundary) ++boundary_hits;
        } catch (const PoleHit&) {
            // pole preimages are legitimate inputs; nothing to model past them
        }
    }
    CHECK(boundary_hits > 0);  // the sweep must actually exercise boundary spheres
}

TEST_CASE("boundary image satisfies the stated bounds") {
    // Start exactly on S_beta(x0) in the alpha-less regime: the image norm must
    // be >= beta even though its exact value is point-dependent.
    MapParams params(PadicNumber::integer(1, 2), PadicNumber::integer(1, 2),
                     PadicNumber::integer(0, 2));
    DynamicsProfile prof = profile(params);
    REQUIRE(prof.regime == Regime::AlphaLess);
    Rng rng(10);
    for (int i = 0; i < 40; ++i) {
        PadicNumber start =
            random_sphere_point(rng, prof.fixed_point, prof.beta.exponent(), 8);
        try {
            OrbitNormData data = orbit_norm_data(params, start, 1);
            REQUIRE(data.distance.size() == 2);
            CHECK(data.distance[1] >= prof.beta);
            CHECK(radius_model_check(params, start, 1).ok);
        } catch (const PoleHit&) {
        }
    }
}

TEST_CASE("model check reports the pole") {
    // f(2) = -1 = -c for a = -6, b = 5, c = 1.
    MapParams params(PadicNumber::integer(-6, 2), PadicNumber::integer(5, 2),
                     PadicNumber::integer(1, 2));
    CHECK_THROWS_AS(radius_model_check(params, PadicNumber::integer(2, 2), 5), PoleHit);
}

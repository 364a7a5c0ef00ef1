#include "padicdyn/sphere_analysis.hpp"

#include "padicdyn/sampling.hpp"

namespace padicdyn {

Radius rho_table(const DynamicsProfile& prof, const MapParams& params, long r_exp) {
    InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);
    if (!inv.contains(r_exp)) {
        throw NotInvariantRadius("rho is defined on invariant spheres only");
    }
    if (inv.kind() == InvariantRadiusSet::Kind::GreaterThanMax) {
        return std::max(prof.alpha, prof.beta);
    }
    Radius drift = (params.a() - params.c()).norm();
    if (drift.is_zero()) {
        throw InternalCheckFailure("a - c vanished despite a != c");
    }
    if (r_exp > prof.beta.exponent()) return drift;
    return drift * Radius::power(r_exp) / prof.beta;
}

Radius rho(const DynamicsProfile& prof, const MapParams& params, long r_exp) {
    Radius table = rho_table(prof, params, r_exp);
    // Pointwise cross-check at one sphere point; the displacement norm does
    // not depend on the choice of point.
    PadicNumber s =
        prof.fixed_point + PadicNumber(prime_power(params.prime(), -r_exp), params.prime());
    Radius direct = (evaluate(params, s) - s).norm();
    if (direct != table) {
        throw InternalCheckFailure("displacement table disagrees with f at r_exp = " +
                                   std::to_string(r_exp));
    }
    return table;
}

BallSpec minimal_invariant_ball(const DynamicsProfile& prof, const MapParams& params,
                                const PadicNumber& s, long r_exp, Rng& rng, int samples) {
    InvariantRadiusSet inv = InvariantRadiusSet::from_profile(prof);
    if (!inv.contains(r_exp)) {
        throw NotInvariantRadius("no invariant ball on a non-invariant sphere");
    }
    if (!in_sphere(s, SphereSpec(prof.fixed_point, Radius::power(r_exp)))) {
        throw NotOnSphere("center must lie on S_{p^" + std::to_string(r_exp) + "}(x0)");
    }
    Radius radius = rho(prof, params, r_exp);
    BallSpec ball{s, radius};
    for (int i = 0; i < samples; ++i) {
        PadicNumber y = random_ball_point(rng, s, radius.exponent());
        if (!in_ball(evaluate(params, y), ball)) {
            throw InternalCheckFailure("image of a ball point escaped the invariant ball");
        }
    }
    return ball;
}

MeasureValue normalized_ball_measure(long prime, long rho_exp, long r_exp) {
    if (rho_exp > r_exp) {
        throw InvalidRadiusPair("ball radius exceeds the sphere radius");
    }
    // p rho / ((p-1) r) = p^(rho_exp - r_exp + 1) / (p - 1)
    mpq_class raw = prime_power(prime, rho_exp - r_exp + 1) / mpq_class(prime - 1);
    MeasureValue m{raw, raw, false};
    if (m.value > 1) {
        m.value = 1;
        m.clamped = true;
    }
    return m;
}

mpq_class sphere_haar_mass(long prime, long r_exp) {
    return prime_power(prime, r_exp) * mpq_class(prime - 1) / mpq_class(prime);
}

} // namespace padicdyn

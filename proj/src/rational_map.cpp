#include "padicdyn/rational_map.hpp"

#include <utility>

namespace padicdyn {

MapParams::MapParams(PadicNumber a, PadicNumber b, PadicNumber c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
    require_same_prime(a_, b_);
    require_same_prime(a_, c_);
    if (a_ == c_) {
        throw InvalidMapParams("map requires a != c");
    }
    if ((c_ * c_ - a_ * c_ + b_).is_zero()) {
        throw InvalidMapParams("map requires c^2 - ac + b != 0");
    }
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::AlphaLess: return "alpha-less";
        case Regime::AlphaEqual: return "alpha-equal";
        case Regime::AlphaGreater: return "alpha-greater";
    }
    return "?";
}

std::string to_string(FixedPointClass cls) {
    switch (cls) {
        case FixedPointClass::Attractive: return "attractive";
        case FixedPointClass::Indifferent: return "indifferent";
        case FixedPointClass::Repelling: return "repelling";
    }
    return "?";
}

PadicNumber evaluate(const MapParams& params, const PadicNumber& x) {
    PadicNumber den = x + params.c();
    if (den.is_zero()) {
        throw PoleHit("evaluation at the pole x = -c", -1);
    }
    return (x * x + params.a() * x + params.b()) / den;
}

PadicNumber fixed_point(const MapParams& params) {
    PadicNumber x0 = params.b() / (params.c() - params.a());
    if (x0 == params.pole()) {
        // Excluded by c^2 - ac + b != 0.
        throw InternalCheckFailure("fixed point coincides with the pole");
    }
    return x0;
}

DynamicsProfile profile(const MapParams& params) {
    PadicNumber x0 = fixed_point(params);
    Radius alpha = (x0 + params.a()).norm();
    Radius beta = (x0 + params.c()).norm();
    if (beta.is_zero()) {
        throw InternalCheckFailure("x0 + c = 0 despite construction constraints");
    }
    Regime regime = alpha == beta  ? Regime::AlphaEqual
                    : alpha < beta ? Regime::AlphaLess
                                   : Regime::AlphaGreater;
    // f'(x0) = (x0 + a)/(x0 + c), the quotient rule collapsed at f(x0) = x0.
    Radius lambda = alpha / beta;
    FixedPointClass cls = lambda < Radius::power(0)    ? FixedPointClass::Attractive
                          : lambda == Radius::power(0) ? FixedPointClass::Indifferent
                                                       : FixedPointClass::Repelling;
    return DynamicsProfile{std::move(x0), alpha, beta, regime, lambda, cls};
}

Radius displacement_from_fixed_point(const MapParams& params, const PadicNumber& x) {
    PadicNumber x0 = fixed_point(params);
    Radius direct = (evaluate(params, x) - x0).norm();
    Radius factored = (x - x0).norm() * (x + params.a()).norm() / (x + params.c()).norm();
    if (direct != factored) {
        throw InternalCheckFailure("displacement identity violated at x = " + x.str());
    }
    return direct;
}

bool sphere_is_invariant(const DynamicsProfile& prof, long r_exp) {
    if (prof.regime == Regime::AlphaEqual) {
        return r_exp != prof.beta.exponent();
    }
    return r_exp > prof.max_exponent();
}

ConjugatedMap::ConjugatedMap(long sphere_exp, ConjugationForm form, PadicNumber n2,
                             PadicNumber n1, PadicNumber n0, PadicNumber d1, PadicNumber d0)
    : sphere_exp_(sphere_exp),
      form_(form),
      n2_(std::move(n2)),
      n1_(std::move(n1)),
      n0_(std::move(n0)),
      d1_(std::move(d1)),
      d0_(std::move(d0)) {}

PadicNumber ConjugatedMap::evaluate(const PadicNumber& t) const {
    PadicNumber den = d1_ * t + d0_;
    if (den.is_zero()) {
        throw PoleHit("conjugated map undefined at t = " + t.str(), -1);
    }
    return (n2_ * t * t + n1_ * t + n0_) / den;
}

ConjugatedMap conjugate_to_unit_sphere(const MapParams& params, long sphere_exp) {
    DynamicsProfile prof = profile(params);
    if (!sphere_is_invariant(prof, sphere_exp)) {
        throw NotInvariantRadius("p^" + std::to_string(sphere_exp) +
                                 " is not an invariant radius of this map");
    }
    const long p = params.prime();
    PadicNumber scale(prime_power(p, sphere_exp), p);  // p^l
    PadicNumber a_shift = scale * (prof.fixed_point + params.a());
    PadicNumber c_shift = scale * (prof.fixed_point + params.c());
    PadicNumber one = PadicNumber::integer(1, p);
    PadicNumber zero = PadicNumber::integer(0, p);

    bool rescale = prof.regime == Regime::AlphaEqual && sphere_exp < prof.beta.exponent();
    if (!rescale) {
        // (t^2 + p^l(x0+a) t) / (t + p^l(x0+c))
        return ConjugatedMap(sphere_exp, ConjugationForm::Quadratic, one, a_shift, zero, one,
                             c_shift);
    }
    // Dividing through by p^l(x0+a) makes the coefficients integral when
    // l < exponent(beta) in the AlphaEqual regime.
    PadicNumber inv_shift = one / a_shift;
    PadicNumber ratio = (prof.fixed_point + params.c()) / (prof.fixed_point + params.a());
    return ConjugatedMap(sphere_exp, ConjugationForm::Rescaled, inv_shift, one, zero, inv_shift,
                         ratio);
}

OrbitResult orbit(const MapParams& params, const PadicNumber& start, int steps,
                  const OrbitLimits& limits) {
    if (steps < 0) throw Error("orbit length must be nonnegative");
    if (steps > limits.cap) {
        throw Error("orbit length " + std::to_string(steps) + " exceeds the cap of " +
                    std::to_string(limits.cap));
    }
    OrbitResult result;
    result.points.push_back(start);
    for (int k = 0; k < steps; ++k) {
        const PadicNumber& x = result.points.back();
        if (x == params.pole()) {
            result.pole_step = k;
            return result;
        }
        PadicNumber next = evaluate(params, x);
        std::size_t bits = mpz_sizeinbase(next.value().get_num().get_mpz_t(), 2) +
                           mpz_sizeinbase(next.value().get_den().get_mpz_t(), 2);
        if (bits > limits.max_bits) {
            result.truncated_at = k + 1;
            return result;
        }
        result.points.push_back(std::move(next));
    }
    if (result.points.back() == params.pole() && steps >= 0) {
        // Terminal point is the pole; flag it so callers know f^(steps+1) is undefined.
        result.pole_step = steps;
    }
    return result;
}

namespace {

long integer_valuation(const mpz_class& v, const mpz_class& p) {
    // Precondition: v != 0.
    mpz_class stripped;
    return static_cast<long>(mpz_remove(stripped.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t()));
}

} // namespace

OrbitNormData orbit_norm_data(const MapParams& params, const PadicNumber& start, int steps,
                              const OrbitNormOptions& options) {
    OrbitNormData out;
    const mpz_class p(params.prime());

    // Common integer form of the parameters: a = A/s, b = B/s, c = C/s.
    mpz_class s = 1;
    mpz_lcm(s.get_mpz_t(), params.a().value().get_den().get_mpz_t(),
            params.b().value().get_den().get_mpz_t());
    mpz_lcm(s.get_mpz_t(), s.get_mpz_t(), params.c().value().get_den().get_mpz_t());
    mpq_class sq(s);
    mpz_class A = mpz_class(params.a().value() * sq);
    mpz_class B = mpz_class(params.b().value() * sq);
    mpz_class C = mpz_class(params.c().value() * sq);

    PadicNumber x0 = fixed_point(params);
    const mpz_class& n0 = x0.value().get_num();
    const mpz_class& d0 = x0.value().get_den();
    const long v_d0 = integer_valuation(d0, p);

    // Current point as an unreduced fraction N/D. Valuations of unreduced
    // fractions are exact: common factors cancel in v(N) - v(D).
    mpz_class N = start.value().get_num();
    mpz_class D = start.value().get_den();

    auto distance_norm = [&](const mpz_class& num, const mpz_class& den, long v_den) {
        mpz_class diff = num * d0 - n0 * den;
        if (diff == 0) return Radius::zero();
        return Radius::power(-(integer_valuation(diff, p) - v_den - v_d0));
    };

    long v_D = integer_valuation(D, p);
    out.distance.push_back(distance_norm(N, D, v_D));

    for (int k = 0; k < steps; ++k) {
        // Pole test: N/D == -C/s  <=>  N s + C D == 0.
        mpz_class pole_probe = N * s + C * D;
        if (pole_probe == 0) {
            out.pole_step = k;
            return out;
        }
        if (mpz_sizeinbase(N.get_mpz_t(), 2) + mpz_sizeinbase(D.get_mpz_t(), 2) >
            options.max_bits) {
            out.truncated = true;
            return out;
        }
        // f(N/D) = (s N^2 + A N D + B D^2) / (D (s N + C D)), unreduced.
        mpz_class next_n = s * N * N + A * N * D + B * D * D;
        mpz_class next_d = D * pole_probe;
        long v_next_d = integer_valuation(next_d, p);

        if (options.step_displacements) {
            mpz_class diff = next_n * D - N * next_d;
            if (diff == 0) {
                out.displacement.push_back(Radius::zero());
            } else {
                out.displacement.push_back(
                    Radius::power(-(integer_valuation(diff, p) - v_next_d - v_D)));
            }
        }

        Radius dist = distance_norm(next_n, next_d, v_next_d);
        out.distance.push_back(dist);
        if (dist.is_zero()) {
            // Landed on the fixed point; the orbit is constant from here and the
            // small exact representation keeps the remaining steps cheap.
            N = n0;
            D = d0;
            v_D = v_d0;
        } else {
            N = std::move(next_n);
            D = std::move(next_d);
            v_D = v_next_d;
        }
    }
    return out;
}

} // namespace padicdyn

#include "padicdyn/sampling.hpp"

#include "padicdyn/modular.hpp"

namespace padicdyn {

namespace {

long random_signed(Rng& rng, int bits) {
    std::uint64_t magnitude = rng.below(std::uint64_t(1) << bits);
    long v = static_cast<long>(magnitude);
    return rng.coin() ? v : -v;
}

long random_coprime(Rng& rng, long prime, int bits, bool allow_negative) {
    for (;;) {
        std::uint64_t magnitude = 1 + rng.below((std::uint64_t(1) << bits) - 1);
        if (magnitude % static_cast<std::uint64_t>(prime) == 0) continue;
        long v = static_cast<long>(magnitude);
        return (allow_negative && rng.coin()) ? -v : v;
    }
}

long unit_residue_mod_p(const PadicNumber& u) {
    return static_cast<long>(
        rational_residue_mod(u.value(), static_cast<std::uint64_t>(u.prime())));
}

} // namespace

PadicNumber random_rational(Rng& rng, long prime, int bits) {
    long num = random_signed(rng, bits);
    long den = 1 + static_cast<long>(rng.below((std::uint64_t(1) << bits) - 1));
    return PadicNumber::ratio(num, den, prime);
}

PadicNumber random_unit(Rng& rng, long prime, int bits) {
    long num = random_coprime(rng, prime, bits, /*allow_negative=*/true);
    long den = random_coprime(rng, prime, bits, /*allow_negative=*/false);
    return PadicNumber::ratio(num, den, prime);
}

PadicNumber random_small_unit(Rng& rng, long prime, int bits) {
    return PadicNumber::integer(random_coprime(rng, prime, bits, /*allow_negative=*/true),
                                prime);
}

PadicNumber random_padic_integer(Rng& rng, long prime, int bits) {
    long num = random_signed(rng, bits);
    long den = random_coprime(rng, prime, bits, /*allow_negative=*/false);
    return PadicNumber::ratio(num, den, prime);
}

PadicNumber random_sphere_point(Rng& rng, const PadicNumber& center, long r_exp, int bits) {
    long p = center.prime();
    PadicNumber offset(prime_power(p, -r_exp), p);
    return center + offset * random_unit(rng, p, bits);
}

PadicNumber random_ball_point(Rng& rng, const PadicNumber& center, long rho_exp, int bits) {
    long p = center.prime();
    PadicNumber offset(prime_power(p, -rho_exp), p);
    return center + offset * random_padic_integer(rng, p, bits);
}

MapParams random_map_params(Rng& rng, long prime, const ParamGenOptions& options) {
    const long p = prime;
    if (options.regime == Regime::AlphaEqual && options.drift_below_beta &&
        !*options.drift_below_beta && p == 2) {
        // Any two 2-adic units are congruent mod 2, so |a - c| = beta cannot
        // happen together with alpha = beta when p = 2.
        throw Error("|a - c| = beta with alpha = beta is impossible for p = 2");
    }

    auto pick_unit = [&options](Rng& r, long prime_value) {
        return options.integer_values ? random_small_unit(r, prime_value, options.bits)
                                      : random_unit(r, prime_value, options.bits);
    };

    for (int attempt = 0; attempt < 256; ++attempt) {
        PadicNumber x0 = options.integer_values
                             ? PadicNumber::integer(static_cast<long>(rng.below(
                                                        std::uint64_t(1) << options.bits)) -
                                                        (std::int64_t(1) << (options.bits - 1)),
                                                    p)
                             : random_rational(rng, p, options.bits);

        long alpha_exp = rng.range(options.exp_lo, options.exp_hi);
        long beta_exp = rng.range(options.exp_lo, options.exp_hi);
        bool zero_alpha = false;
        if (options.regime) {
            switch (*options.regime) {
                case Regime::AlphaLess:
                    zero_alpha = options.allow_zero_alpha && rng.below(8) == 0;
                    if (!zero_alpha && alpha_exp >= beta_exp) {
                        beta_exp = alpha_exp + rng.range(1, 3);
                    }
                    break;
                case Regime::AlphaEqual:
                    alpha_exp = beta_exp;
                    break;
                case Regime::AlphaGreater:
                    if (alpha_exp <= beta_exp) alpha_exp = beta_exp + rng.range(1, 3);
                    break;
            }
        } else {
            zero_alpha = options.allow_zero_alpha && rng.below(16) == 0;
        }

        // x0 + c = p^(-beta_exp) v and x0 + a = p^(-alpha_exp) u pin beta and
        // alpha; b = x0 (c - a) then makes x0 the fixed point.
        PadicNumber v = pick_unit(rng, p);
        PadicNumber c = PadicNumber(prime_power(p, -beta_exp), p) * v - x0;

        PadicNumber a = -x0;  // alpha = 0
        if (!zero_alpha) {
            PadicNumber u = pick_unit(rng, p);
            if (options.regime == Regime::AlphaEqual && options.drift_below_beta) {
                if (*options.drift_below_beta) {
                    // u = v + p w keeps u a unit and makes |u - v|_p < 1.
                    PadicNumber w = random_padic_integer(rng, p, options.bits);
                    if (w.is_zero()) w = PadicNumber::integer(1, p);
                    u = v + PadicNumber::integer(p, p) * w;
                } else {
                    // u = v + delta with delta in [1, p-1] and u still a unit.
                    long v_res = unit_residue_mod_p(v);
                    long delta = rng.range(1, p - 1);
                    if ((v_res + delta) % p == 0) delta = delta % (p - 1) + 1;
                    u = v + PadicNumber::integer(delta, p);
                }
            }
            a = PadicNumber(prime_power(p, -alpha_exp), p) * u - x0;
        }

        PadicNumber b = x0 * (c - a);
        if (a == c) continue;
        MapParams params(a, b, c);
        if (options.regime && profile(params).regime != *options.regime) continue;
        return params;
    }
    throw InternalCheckFailure("failed to generate map parameters after 256 attempts");
}

} // namespace padicdyn

#pragma once

#include <optional>

#include "padicdyn/padic_number.hpp"
#include "padicdyn/rational_map.hpp"
#include "padicdyn/rng.hpp"

namespace padicdyn {

/// Uniform-ish random rational with |numerator| < 2^bits and
/// 1 <= denominator < 2^bits (bits <= 63). Zero is a possible value.
PadicNumber random_rational(Rng& rng, long prime, int bits);

/// Random u with |u|_p = 1: numerator and denominator both coprime to p.
PadicNumber random_unit(Rng& rng, long prime, int bits);

/// Integer unit (denominator 1). Deep exact orbits need these: coefficient
/// sizes double per step, and small denominators keep the constant down.
PadicNumber random_small_unit(Rng& rng, long prime, int bits);

/// Random z with |z|_p <= 1 (denominator coprime to p); may be zero.
PadicNumber random_padic_integer(Rng& rng, long prime, int bits);

/// Random point of S_{p^r_exp}(center): center + p^{-r_exp} * u with u a unit.
/// Sphere membership holds by construction.
PadicNumber random_sphere_point(Rng& rng, const PadicNumber& center, long r_exp, int bits = 16);

/// Random point of the closed ball U_{p^rho_exp}(center).
PadicNumber random_ball_point(Rng& rng, const PadicNumber& center, long rho_exp, int bits = 16);

/// Constraints for random map parameters. Exponents of alpha and beta are
/// drawn from [exp_lo, exp_hi]; the construction places the fixed point first
/// and derives (a, b, c) from it, so every sample is valid by construction.
struct ParamGenOptions {
    std::optional<Regime> regime;     // any regime when unset
    long exp_lo = -4;
    long exp_hi = 4;
    int bits = 10;                    // size of the random units and of x0
    bool integer_values = false;      // x0 and the unit offsets are integers
    bool allow_zero_alpha = true;     // occasionally produce alpha = 0 (AlphaLess only)
    // AlphaEqual only: force |a - c|_p < beta (true), = beta (false), or either (unset).
    std::optional<bool> drift_below_beta;
};

MapParams random_map_params(Rng& rng, long prime, const ParamGenOptions& options = {});

} // namespace padicdyn

#pragma once

#include <gmpxx.h>

#include "padicdyn/rational_map.hpp"
#include "padicdyn/rng.hpp"

namespace padicdyn {

/// The set I of invariant-sphere radii around the fixed point, described by
/// its kind. Containment queries are pure integer comparisons on exponents;
/// neither alpha nor beta ever belongs to the set when alpha != beta.
class InvariantRadiusSet {
public:
    enum class Kind {
        GreaterThanMax,  // alpha != beta: every r with r > max{alpha, beta}
        AllExceptBeta,   // alpha == beta: every positive r != beta
    };

    static InvariantRadiusSet from_profile(const DynamicsProfile& prof) {
        if (prof.regime == Regime::AlphaEqual) {
            return InvariantRadiusSet(Kind::AllExceptBeta, prof.beta.exponent());
        }
        return InvariantRadiusSet(Kind::GreaterThanMax, prof.max_exponent());
    }

    Kind kind() const { return kind_; }
    /// Exponent of max{alpha, beta} (GreaterThanMax) or of beta (AllExceptBeta).
    long threshold_exp() const { return threshold_exp_; }

    bool contains(long r_exp) const {
        return kind_ == Kind::AllExceptBeta ? r_exp != threshold_exp_ : r_exp > threshold_exp_;
    }

private:
    InvariantRadiusSet(Kind kind, long threshold) : kind_(kind), threshold_exp_(threshold) {}
    Kind kind_;
    long threshold_exp_;
};

/// The displacement norm rho(r) = |f(x) - x|_p, constant over the invariant
/// sphere S_r(x0):
///     |a - c|_p r / beta   when r < beta = alpha,
///     |a - c|_p            when r > beta = alpha,
///     max{alpha, beta}     when alpha != beta (any invariant r).
/// Computed from the table and cross-checked against f at one sphere point.
/// Throws NotInvariantRadius when p^r_exp is not invariant.
Radius rho(const DynamicsProfile& prof, const MapParams& params, long r_exp);

/// The table value alone, without the pointwise cross-check.
Radius rho_table(const DynamicsProfile& prof, const MapParams& params, long r_exp);

/// The minimal invariant ball U_rho(r)(s) around s in S_{p^r_exp}(x0).
/// Verifies closure by mapping `samples` random ball points through f.
/// Throws NotOnSphere / NotInvariantRadius on bad inputs.
BallSpec minimal_invariant_ball(const DynamicsProfile& prof, const MapParams& params,
                                const PadicNumber& s, long r_exp, Rng& rng, int samples = 50);

/// Normalized Haar measure of a ball U_rho(s) inside the sphere S_r(x0):
/// raw value p rho / ((p-1) r). The raw formula can exceed 1 (only `raw`
/// keeps it); since radii are powers of p, either rho <= r/p and the formula
/// is the measure, or rho >= r and the ball contains the sphere, measure 1.
struct MeasureValue {
    mpq_class raw;
    mpq_class value;  // min(raw, 1)
    bool clamped;     // true when the ball covers the whole sphere
};

/// Throws InvalidRadiusPair when rho_exp > r_exp.
MeasureValue normalized_ball_measure(long prime, long rho_exp, long r_exp);

/// Unnormalized Haar mass of the sphere, r (1 - 1/p).
mpq_class sphere_haar_mass(long prime, long r_exp);

} // namespace padicdyn

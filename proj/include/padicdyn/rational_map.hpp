#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "padicdyn/padic_number.hpp"

namespace padicdyn {

/// Parameters of the degree-(2,1) map f(x) = (x^2 + ax + b)/(x + c) over Q_p.
/// Construction enforces a != c and c^2 - ac + b != 0; under these constraints
/// the map has the unique fixed point b/(c - a) and the pole -c is not fixed.
class MapParams {
public:
    MapParams(PadicNumber a, PadicNumber b, PadicNumber c);

    const PadicNumber& a() const { return a_; }
    const PadicNumber& b() const { return b_; }
    const PadicNumber& c() const { return c_; }
    long prime() const { return a_.prime(); }

    /// The pole -c, the single point where f is undefined.
    PadicNumber pole() const { return -c_; }

private:
    PadicNumber a_, b_, c_;
};

enum class Regime {
    AlphaLess,     // alpha < beta
    AlphaEqual,    // alpha = beta
    AlphaGreater,  // alpha > beta
};

enum class FixedPointClass {
    Attractive,   // |f'(x0)|_p < 1
    Indifferent,  // |f'(x0)|_p = 1
    Repelling,    // |f'(x0)|_p > 1
};

std::string to_string(Regime regime);
std::string to_string(FixedPointClass cls);

/// Derived data of the map around its fixed point. alpha = |x0 + a|_p and
/// beta = |x0 + c|_p are the two norms that control all radius dynamics;
/// beta is always a power of p (x0 + c = (b + c^2 - ac)/(c - a) != 0), while
/// alpha may be zero (x0 + a can vanish), which forces the AlphaLess regime.
struct DynamicsProfile {
    PadicNumber fixed_point;
    Radius alpha;
    Radius beta;
    Regime regime;
    Radius lambda_norm;  // |f'(x0)|_p = alpha / beta
    FixedPointClass fixed_point_class;

    /// Exponent of max{alpha, beta}; alpha zero contributes nothing.
    long max_exponent() const {
        return std::max(alpha, beta).exponent();
    }
};

/// f(x). Throws PoleHit when x = -c.
PadicNumber evaluate(const MapParams& params, const PadicNumber& x);

/// The unique fixed point b/(c - a).
PadicNumber fixed_point(const MapParams& params);

DynamicsProfile profile(const MapParams& params);

/// |f(x) - x0|_p for x != x0, x != -c. The returned value is computed directly
/// and cross-checked against the factored identity
///     |f(x) - x0|_p = |x - x0|_p * |(x - x0) + (x0 + a)|_p / |(x - x0) + (x0 + c)|_p,
/// which holds exactly because f(x) - x0 = (x - x0)(x + a)/(x + c).
Radius displacement_from_fixed_point(const MapParams& params, const PadicNumber& x);

/// True iff the sphere of radius p^r_exp around the fixed point maps into
/// itself: r > max{alpha, beta} when alpha != beta, any r != beta otherwise.
bool sphere_is_invariant(const DynamicsProfile& prof, long r_exp);

/// Which algebraic form of the conjugated map carries integral coefficients.
enum class ConjugationForm {
    Quadratic,  // (t^2 + p^l(x0+a) t) / (t + p^l(x0+c))
    Rescaled,   // same map with numerator and denominator divided by p^l(x0+a)
};

/// The map transported from S_{p^l}(x0) to the unit sphere S_1(0) by the
/// change of variable x = p^{-l} t + x0. Stored as an exact rational function
///     (n2 t^2 + n1 t + n0) / (d1 t + d0)
/// whose coefficients are p-adic integers in the selected form.
class ConjugatedMap {
public:
    long sphere_exponent() const { return sphere_exp_; }
    ConjugationForm form() const { return form_; }
    long prime() const { return n1_.prime(); }

    const PadicNumber& num_t2() const { return n2_; }
    const PadicNumber& num_t1() const { return n1_; }
    const PadicNumber& num_t0() const { return n0_; }
    const PadicNumber& den_t1() const { return d1_; }
    const PadicNumber& den_t0() const { return d0_; }

    /// Exact evaluation. Throws PoleHit when the denominator vanishes
    /// (never happens on the unit sphere for invariant radii).
    PadicNumber evaluate(const PadicNumber& t) const;

private:
    friend ConjugatedMap conjugate_to_unit_sphere(const MapParams&, long);
    ConjugatedMap(long sphere_exp, ConjugationForm form, PadicNumber n2, PadicNumber n1,
                  PadicNumber n0, PadicNumber d1, PadicNumber d0);

    long sphere_exp_;
    ConjugationForm form_;
    PadicNumber n2_, n1_, n0_, d1_, d0_;
};

/// Conjugation to the unit sphere for an invariant radius p^l.
/// Throws NotInvariantRadius when p^l is not in the invariant set.
/// The Rescaled form is selected exactly when the regime is AlphaEqual with
/// l < exponent(beta); the Quadratic coefficients are not p-adic integers there.
ConjugatedMap conjugate_to_unit_sphere(const MapParams& params, long sphere_exp);

/// Iteration limits. Coefficient sizes roughly double per step, so exact
/// orbits are capped both in length and in total bit size.
struct OrbitLimits {
    int cap = 30;
    std::size_t max_bits = std::size_t(1) << 23;  // combined numerator+denominator bits
};

struct OrbitResult {
    /// x_0 .. x_k with k <= steps; shorter when a pole or the bit guard cuts in.
    std::vector<PadicNumber> points;
    /// Set when f^(step)(x) = -c; `points` then ends at that preimage.
    std::optional<int> pole_step;
    /// Set when the bit guard stopped the iteration before `steps`.
    std::optional<int> truncated_at;
};

/// Exact orbit x, f(x), ..., f^steps(x) as canonical reduced rationals.
/// This is the reference evaluator; `orbit_norm_data` below computes the same
/// norms without canonicalization and is the one used inside large sweeps.
OrbitResult orbit(const MapParams& params, const PadicNumber& start, int steps,
                  const OrbitLimits& limits = {});

struct OrbitNormOptions {
    bool step_displacements = false;   // also compute |x_{k+1} - x_k|_p
    std::size_t max_bits = std::size_t(1) << 25;
};

struct OrbitNormData {
    /// |x_k - x0|_p for k = 0..n_done.
    std::vector<Radius> distance;
    /// |x_{k+1} - x_k|_p for k = 0..n_done-1 (when requested).
    std::vector<Radius> displacement;
    std::optional<int> pole_step;
    bool truncated = false;
};

/// Orbit norms via unreduced integer pairs: valuations are independent of the
/// representative fraction, so skipping gcd reduction keeps every norm exact
/// at a fraction of the cost. Serial `orbit` is kept as the reference
/// implementation and the two are compared in the test suite.
OrbitNormData orbit_norm_data(const MapParams& params, const PadicNumber& start, int steps,
                              const OrbitNormOptions& options = {});

} // namespace padicdyn

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padicdyn/parallel.hpp"
#include "padicdyn/rational_map.hpp"
#include "padicdyn/rng.hpp"
#include "padicdyn/sphere_analysis.hpp"

namespace padicdyn {

enum class TheoryVerdict {
    Ergodic,
    NotErgodic,
    Unclassified,  // no known rule covers the configuration
};

std::string to_string(TheoryVerdict v);

/// Rule tags, stable strings for reports:
///   "p2-iff"                  p = 2: ergodic iff alpha != beta and r = 2 max{alpha, beta}
///   "podd-above-max"          p >= 3, alpha != beta, r > max{alpha, beta}: not ergodic
///   "podd-drift-below-beta"   p >= 3, alpha = beta, |a-c| < beta: not ergodic
///   "podd-drift-at-beta-above" p >= 3, alpha = beta, |a-c| = beta, r > beta: not ergodic
///   "uncovered"               p >= 3, alpha = beta, |a-c| = beta, r < beta
struct ClassifyResult {
    TheoryVerdict verdict;
    std::string rule;
};

/// Theoretical per-sphere verdict. Throws NotInvariantRadius when p^r_exp is
/// not an invariant radius.
ClassifyResult classify(const DynamicsProfile& prof, const MapParams& params, long r_exp);

/// Coefficient sums mod 4 of a numerator/denominator polynomial pair:
/// a1/b1 over odd indices, a2/b2 over even indices.
struct Mod4Inputs {
    unsigned a1, a2, b1, b2;
};

Mod4Inputs mod4_sums(std::span<const long> num_coeffs, std::span<const long> den_coeffs);

/// Sums for the conjugated map's rational function (prime 2 only); the
/// 2-adic integer coefficients are reduced mod 4 exactly.
Mod4Inputs mod4_sums(const ConjugatedMap& conj);

/// The four ergodicity patterns, plus the same with numerator and
/// denominator interchanged.
bool mod4_pattern(const Mod4Inputs& in);

/// Ergodicity criterion for R = f/g on the 2-adic unit sphere, f and g given
/// by integer coefficients (ascending powers). Throws DomainViolation unless
/// f(1) and g(1) are odd (which is what makes R map the unit sphere to
/// itself).
bool mod4_criterion(std::span<const long> num_coeffs, std::span<const long> den_coeffs);

/// The conjugated map reduced modulo p^level on the unit residues
/// (1 <= u < p^level, p not dividing u). Construction verifies that every
/// denominator value is a unit and that the induced map is a bijection.
class ResidueSphereMap {
public:
    /// Builds the table; the parallel path fills preassigned slots and is
    /// bit-identical to the serial one.
    static ResidueSphereMap build(const ConjugatedMap& conj, int level,
                                  ExecMode mode = ExecMode::Parallel);

    long prime() const { return prime_; }
    int level() const { return level_; }
    std::uint64_t modulus() const { return modulus_; }
    std::size_t size() const { return next_.size(); }

    std::uint64_t domain_value(std::size_t index) const {
        std::uint64_t i = static_cast<std::uint64_t>(index);
        return i + i / (static_cast<std::uint64_t>(prime_) - 1) + 1;
    }
    std::size_t index_of(std::uint64_t unit) const {
        return static_cast<std::size_t>((unit - 1) - (unit - 1) / static_cast<std::uint64_t>(prime_));
    }
    std::size_t image_index(std::size_t index) const { return next_[index]; }

private:
    ResidueSphereMap(long prime, int level, std::uint64_t modulus)
        : prime_(prime), level_(level), modulus_(modulus) {}
    long prime_;
    int level_;
    std::uint64_t modulus_;
    std::vector<std::uint32_t> next_;
};

struct TransitivityResult {
    std::uint64_t cycle_count;
    bool transitive;  // cycle_count == 1
};

/// Cycle decomposition of the (bijective) residue map.
TransitivityResult transitivity_check(const ResidueSphereMap& map);

/// Functional-graph transitivity of R = f/g on odd residues mod 2^level.
/// Transitive means: the map is a permutation forming a single cycle.
/// This is the brute-force oracle the mod-4 criterion is checked against.
TransitivityResult poly_pair_transitivity(std::span<const long> num_coeffs,
                                          std::span<const long> den_coeffs, int level);

/// Number of unit residues mod p^level.
std::uint64_t unit_count(long prime, int level);

/// True when the level is enumerable: p^level fits comfortably in 64 bits
/// and the unit count stays within the domain budget.
bool level_enumerable(long prime, int level, std::uint64_t max_domain);

struct LevelEvidence {
    int level;
    std::uint64_t domain_size;
    std::uint64_t cycle_count;
    bool transitive;
};

struct WitnessBall {
    PadicNumber center;
    long rho_exp;
    MeasureValue measure;
};

struct ErgodicityVerdict {
    ClassifyResult theory;
    std::vector<LevelEvidence> levels;
    std::optional<WitnessBall> witness;  // invariant proper ball, when measure < 1
    bool disagreement;
};

struct VerdictOptions {
    int max_level = 12;
    std::uint64_t max_domain = std::uint64_t(1) << 21;
    int ball_samples = 50;
    ExecMode mode = ExecMode::Parallel;
};

/// Combines the theoretical verdict with the finite-level cycle oracle on
/// levels 2..max_level of the conjugated map, plus a witness ball when one
/// with measure < 1 exists. `disagreement` is set when theory and evidence
/// cannot be reconciled: an Ergodic verdict with an intransitive level, or a
/// NotErgodic verdict with all levels transitive and no witness ball.
ErgodicityVerdict ergodicity_verdict(const MapParams& params, long r_exp,
                                     const VerdictOptions& options, Rng& rng);

} // namespace padicdyn

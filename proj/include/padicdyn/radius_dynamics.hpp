#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padicdyn/rational_map.hpp"

namespace padicdyn {

/// The one-dimensional dynamics induced on radii |x - x0|_p. Everything here
/// is integer arithmetic on exponents; no real-number representation exists.
struct RadiusMapSpec {
    Regime regime;
    Radius alpha;
    Radius beta;

    static RadiusMapSpec from_profile(const DynamicsProfile& prof) {
        return RadiusMapSpec{prof.regime, prof.alpha, prof.beta};
    }
};

/// Image of one radius step. At the boundary radii r in {alpha, beta} the
/// image depends on the actual point, not just its norm; those steps come
/// back Indeterminate, carrying only the bounds that always hold.
struct RadiusResult {
    static RadiusResult determined(Radius value) {
        return RadiusResult{value, std::nullopt, std::nullopt, true};
    }
    static RadiusResult indeterminate(std::optional<Radius> lower, std::optional<Radius> upper) {
        return RadiusResult{Radius::zero(), lower, upper, false};
    }

    bool is_determined() const { return determined_; }
    const Radius& value() const {
        if (!determined_) throw Error("radius step is indeterminate");
        return value_;
    }
    const std::optional<Radius>& lower_bound() const { return lower_; }
    const std::optional<Radius>& upper_bound() const { return upper_; }

    /// True when `r` is consistent with this result: equal if determined,
    /// inside the bounds otherwise.
    bool admits(const Radius& r) const {
        if (determined_) return r == value_;
        if (lower_ && r < *lower_) return false;
        if (upper_ && r > *upper_) return false;
        return true;
    }

private:
    RadiusResult(Radius value, std::optional<Radius> lower, std::optional<Radius> upper,
                 bool determined)
        : value_(value), lower_(lower), upper_(upper), determined_(determined) {}
    Radius value_;
    std::optional<Radius> lower_;
    std::optional<Radius> upper_;
    bool determined_;
};

/// One step of the radius map for a positive radius r. Throws ZeroRadius for
/// the zero radius.
///
/// AlphaLess:    r < alpha -> (alpha/beta) r      r = alpha -> [?, alpha^2/beta]
///               alpha < r < beta -> r^2/beta     r = beta  -> [beta, ?]
///               r > beta -> r
/// AlphaGreater: r < beta -> (alpha/beta) r       r = beta  -> [alpha, ?]
///               beta < r < alpha -> alpha        r = alpha -> [?, alpha]
///               r > alpha -> r
/// AlphaEqual:   r != alpha -> r                  r = alpha -> unbounded
RadiusResult radius_step(const RadiusMapSpec& spec, const Radius& r);

/// Iterates radius_step n times from r. The sequence ends with a terminal
/// Indeterminate entry if a boundary radius is reached: past that point the
/// image depends on the actual orbit point.
std::vector<RadiusResult> iterate_radius(const RadiusMapSpec& spec, Radius r, int n);

struct RadiusModelOptions {
    std::size_t max_bits = std::size_t(1) << 25;
};

struct RadiusModelReport {
    int steps_checked = 0;
    bool ok = true;
    bool hit_boundary = false;  // some step went through an indeterminate branch
    bool truncated = false;     // orbit bit guard stopped before the requested depth
    std::string failure;        // first mismatch, for diagnostics
};

/// Checks that the exact orbit norms |f^k(x) - x0|_p follow the radius map:
/// every determined step must match exactly, and every boundary step must
/// satisfy the Indeterminate bounds, after which the iteration is re-seeded
/// from the exact norm. Throws PoleHit if the orbit reaches -c within n steps.
RadiusModelReport radius_model_check(const MapParams& params, const PadicNumber& x, int n,
                                     const RadiusModelOptions& options = {});

} // namespace padicdyn

#include "padicdyn/radius_dynamics.hpp"

namespace padicdyn {

RadiusResult radius_step(const RadiusMapSpec& spec, const Radius& r) {
    if (r.is_zero()) throw ZeroRadius("radius map needs a positive radius");
    const Radius& alpha = spec.alpha;
    const Radius& beta = spec.beta;

    switch (spec.regime) {
        case Regime::AlphaLess:
            // alpha may be the zero radius here; the r < alpha branch is then vacuous.
            if (r < alpha) return RadiusResult::determined(alpha / beta * r);
            if (r == alpha)
                return RadiusResult::indeterminate(std::nullopt, alpha.squared() / beta);
            if (r < beta) return RadiusResult::determined(r.squared() / beta);
            if (r == beta) return RadiusResult::indeterminate(beta, std::nullopt);
            return RadiusResult::determined(r);

        case Regime::AlphaGreater:
            if (r < beta) return RadiusResult::determined(alpha / beta * r);
            if (r == beta) return RadiusResult::indeterminate(alpha, std::nullopt);
            if (r < alpha) return RadiusResult::determined(alpha);
            if (r == alpha) return RadiusResult::indeterminate(std::nullopt, alpha);
            return RadiusResult::determined(r);

        case Regime::AlphaEqual:
            if (r == alpha) return RadiusResult::indeterminate(std::nullopt, std::nullopt);
            return RadiusResult::determined(r);
    }
    throw Error("unreachable regime");
}

std::vector<RadiusResult> iterate_radius(const RadiusMapSpec& spec, Radius r, int n) {
    if (n < 1) throw Error("radius iteration needs n >= 1");
    std::vector<RadiusResult> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        RadiusResult step = radius_step(spec, r);
        out.push_back(step);
        if (!step.is_determined()) break;  // terminal: the next value is point-dependent
        r = step.value();
    }
    return out;
}

RadiusModelReport radius_model_check(const MapParams& params, const PadicNumber& x, int n,
                                     const RadiusModelOptions& options) {
    RadiusModelReport report;
    RadiusMapSpec spec = RadiusMapSpec::from_profile(profile(params));

    OrbitNormOptions norm_options;
    norm_options.max_bits = options.max_bits;
    OrbitNormData data = orbit_norm_data(params, x, n, norm_options);
    if (data.pole_step) {
        throw PoleHit("orbit reaches the pole at step " + std::to_string(*data.pole_step),
                      *data.pole_step);
    }
    report.truncated = data.truncated;

    for (std::size_t k = 0; k + 1 < data.distance.size(); ++k) {
        const Radius& current = data.distance[k];
        const Radius& next = data.distance[k + 1];
        if (current.is_zero()) {
            // At the fixed point; the orbit must stay there.
            if (!next.is_zero()) {
                report.ok = false;
                report.failure = "orbit left the fixed point at step " + std::to_string(k + 1);
                return report;
            }
            ++report.steps_checked;
            continue;
        }
        RadiusResult predicted = radius_step(spec, current);
        if (!predicted.is_determined()) report.hit_boundary = true;
        if (!predicted.admits(next)) {
            report.ok = false;
            report.failure = "norm after step " + std::to_string(k + 1) +
                             " is not admitted by the radius map";
            return report;
        }
        ++report.steps_checked;
        // Iteration continues from the exact norm, which re-seeds the model
        // after a boundary step.
    }
    return report;
}

} // namespace padicdyn

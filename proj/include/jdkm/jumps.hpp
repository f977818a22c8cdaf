#pragma once

// Global jump-parameter inversion from the corrected second, fourth and
// sixth infinitesimal moments, with jump/continuous variance decomposition.

#include <span>

#include "jdkm/series.hpp"

namespace jdkm::jumps {

struct JumpParams {
    double lambda = 0.0;    // jump intensity per unit time
    double sigma_xi2 = 0.0; // jump amplitude variance
    double b2 = 0.0;        // continuous diffusion contribution
    double m2 = 0.0;        // total second infinitesimal moment
    double d_jump = 0.0;    // lambda * sigma_xi2
    double f_jump = 0.0;    // d_jump / m2
    bool negative_b2 = false;
};

struct GlobalMoments {
    double M2 = 0.0, M4 = 0.0, M6 = 0.0; // corrected, per unit time
};

struct Decomposition {
    double d_jump = 0.0;
    double d_cont = 0.0; // m2 - d_jump
    double f_jump = 0.0;
    bool negative_cont = false;
};

/// Unconditional increment moments of orders 1..6 per lag, regressed
/// against tau dt exactly as in the per-bin estimator, corrected at the
/// sampling-interval scale; returns the even orders the inversion needs.
[[nodiscard]] GlobalMoments global_infinitesimal_moments(
    const TimeSeries& series, std::span<const int> lags, double dt);

/// Moment inversion for Gaussian jump amplitudes:
/// sigma_xi^2 = M6 / (5 M4); lambda = M4 / (3 sigma_xi^4);
/// b^2 = M2 - lambda sigma_xi^2. A negative b^2 is returned with the flag
/// set, never clamped. Throws std::domain_error if M4 or M6 <= 0.
[[nodiscard]] JumpParams invert_jump_params(double M2, double M4, double M6);

/// d_cont = m2 - d_jump; the two shares sum to m2 exactly.
[[nodiscard]] Decomposition variance_decomposition(const JumpParams& params);

struct SafeInversion {
    JumpParams params;
    Decomposition decomp;
    bool inverted = false; // false: even moments were nonpositive
};

/// invert_jump_params + variance_decomposition when M4 and M6 support it;
/// otherwise the pure-diffusion report (lambda = 0, b^2 = m2 = M2), which
/// is what vanishing even moments mean. Lets batch runs handle diffusive
/// series without special-casing the domain error.
[[nodiscard]] SafeInversion invert_or_diffusion(const GlobalMoments& moments);

} // namespace jdkm::jumps

#pragma once

// Seeded ground-truth generators: Euler-Maruyama jump-diffusion and its
// special cases, plus AR(1), random walk, white noise and a daily-profile
// composite. Identical (config, seed) pairs produce bitwise-identical
// output, independent of thread count.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "jdkm/series.hpp"

namespace jdkm::simulate {

enum class SimKind {
    JumpDiffusion,
    OU,
    AR1,
    RandomWalk,
    WhiteNoise,
    ProfilePlusNoise,
};

[[nodiscard]] std::string kind_name(SimKind kind);
[[nodiscard]] SimKind kind_from_name(const std::string& name);

struct SimConfig {
    SimKind kind = SimKind::OU;
    double drift_theta = 1.0; // a(x) = -drift_theta * x  (OU, JumpDiffusion)
    double b = 1.0;           // diffusion amplitude (noise s.d. for AR1 etc.)
    double lambda = 0.0;      // jump intensity per unit time
    double sigma_xi = 0.0;    // jump amplitude s.d.
    double dt = 0.01;
    std::size_t n = 3800; // 100 whole days at the default intraday grid
    std::uint64_t seed = 1;
    double x0 = 0.0;
    double ar_coeff = 0.5;                          // AR1 only
    std::array<double, 4> profile_coeffs{0, 0, 0, 0}; // ProfilePlusNoise only
    int points_per_day = 38;
    std::string label;
};

// Throws std::invalid_argument on violated invariants (dt <= 0, n < 2, or
// lambda * dt >= 0.1, which would make multi-jump steps common).
void validate(const SimConfig& config);

/// Euler-Maruyama: x_{k+1} = x_k + a(x_k) dt + b sqrt(dt) Z_k + sum of
/// N_k ~ Poisson(lambda dt) jump draws xi_j ~ Normal(0, sigma_xi^2).
/// Random streams are role-separated, so e.g. setting lambda = 0 leaves
/// the Wiener draws of a jump run untouched.
[[nodiscard]] TimeSeries run(const SimConfig& config);

struct JumpEvent {
    std::size_t step = 0;
    double size = 0.0;
};

/// Every jump that run() draws for the same config, in step order.
[[nodiscard]] std::vector<JumpEvent> jump_log(const SimConfig& config);

} // namespace jdkm::simulate

#pragma once

// Densities and maximum-likelihood fitting for the four positive-support
// families, plus cross-sectional fitting of panels into parameter series.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace jdkm::dist_fit {

enum class DistFamily { Gamma, InvGamma, Weibull, LogNormal };

[[nodiscard]] std::string family_name(DistFamily family);
[[nodiscard]] DistFamily family_from_name(const std::string& name);

struct ParamEstimate {
    DistFamily family;
    double phi = 0.0;            // shape (log-location for LogNormal)
    double theta = 0.0;          // scale (log-scale for LogNormal)
    double log_likelihood = 0.0; // at (phi, theta)
    std::size_t n_samples = 0;
    bool converged = false;
};

struct ParamSeries {
    DistFamily family;
    std::vector<double> phi;
    std::vector<double> theta;
    std::vector<std::uint8_t> row_converged; // 1 where fit_mle converged
    int points_per_day = 38;
    std::size_t n_days = 0;
};

/// Density f(x; phi, theta) of the family at x > 0.
///
/// Gamma:     x^(phi-1) e^(-x/theta) / (Gamma(phi) theta^phi)
/// InvGamma:  theta^phi / Gamma(phi) x^(-phi-1) e^(-theta/x)
/// Weibull:   (phi/theta^phi) x^(phi-1) e^(-(x/theta)^phi)
/// LogNormal: exp(-(ln x - phi)^2 / (2 theta^2)) / (x theta sqrt(2 pi))
///
/// Throws std::domain_error if x <= 0 or the parameters are outside the
/// family's domain (phi > 0 required except for LogNormal; theta > 0 always).
[[nodiscard]] double pdf(DistFamily family, double x, double phi, double theta);

/// Maximum-likelihood fit. Newton solvers for Gamma/Weibull shapes (InvGamma
/// reuses the Gamma solver on reciprocals), closed form for LogNormal with
/// population (1/n) variance. Non-convergence is flagged, never silently
/// returned. Throws std::domain_error on nonpositive samples and
/// std::invalid_argument on fewer than 2 samples or zero-variance input.
[[nodiscard]] ParamEstimate fit_mle(DistFamily family,
                                    std::span<const double> samples);

/// Fit every row of a [time x entity] panel. NaN cells are treated as
/// missing and skipped; rows need >= 2 usable entries. Rows whose inner
/// solver fails to converge are filled by linear interpolation between the
/// nearest converged neighbours (boundary rows copy the nearest one).
/// Row count must be a multiple of points_per_day.
[[nodiscard]] ParamSeries fit_cross_section(
    const std::vector<std::vector<double>>& panel, DistFamily family,
    int points_per_day = 1);

/// Seeded draws from the family, for oracle tests and simulated panels.
[[nodiscard]] std::vector<double> sample(DistFamily family, double phi,
                                         double theta, std::size_t n,
                                         std::uint64_t seed);

} // namespace jdkm::dist_fit

#pragma once

// The core estimator: raw conditional moments per (bin, order, lag),
// infinitesimal moments by finite-lag regression, the F1..F6 correction
// algebra, KM coefficients with the Pawula diagnostic, and quality-weighted
// standard errors.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "jdkm/binning.hpp"
#include "jdkm/series.hpp"

namespace jdkm::km {

struct MomentTable {
    std::vector<int> orders;  // sorted subset of 1..6
    std::vector<int> lags;    // in sampling steps
    std::size_t n_bins = 0;
    double dt = 1.0;
    // K[(order index) * n_bins * n_lags + bin * n_lags + lag index];
    // NaN marks cells whose occupancy fell below the configured minimum.
    std::vector<double> K;
    // occupancy[bin * n_lags + lag index] = pairs entering that cell
    std::vector<std::size_t> occupancy;

    [[nodiscard]] double k(std::size_t order_idx, std::size_t bin,
                           std::size_t lag_idx) const {
        return K[(order_idx * n_bins + bin) * lags.size() + lag_idx];
    }
    [[nodiscard]] std::size_t occ(std::size_t bin, std::size_t lag_idx) const {
        return occupancy[bin * lags.size() + lag_idx];
    }
};

// Per-(bin, order) finite-lag regression output.
struct Regression {
    double M = 0.0;               // intercept: infinitesimal moment
    double beta = 0.0;            // slope: systematic finite-lag effect
    double r2 = 0.0;
    double sigma_intercept = 0.0; // OLS standard error of the intercept
    double sigma_w = 0.0;         // sigma_intercept * sqrt(1 - r2)
    bool present = false;         // >= 3 populated lags
    bool exact = false;           // zero-residual fit (r2 := 1, se := 0)
};

enum class Classification { Diffusive, Jump, Indeterminate };

[[nodiscard]] std::string classification_name(Classification c);

struct KMBin {
    double center = 0.0;
    std::size_t occupancy = 0;            // grid occupancy of the bin
    std::array<Regression, 6> reg{};      // by order, index n-1
    std::array<double, 6> F{};            // corrected moments (NaN absent)
    std::array<double, 6> D{};            // F[n]/n!      (NaN absent)
    double ratio = 0.0;                   // D4/D2
    bool ratio_defined = false;
    Classification classification = Classification::Indeterminate;
};

struct KMResult {
    std::vector<KMBin> bins;
    double dt = 1.0;
    double sigma = 0.0; // grid sigma, for central-bin selection
};

struct KMOptions {
    std::vector<int> orders = {1, 2, 3, 4, 5, 6};
    std::vector<int> lags = {1, 2, 3, 4, 5, 6};
    std::size_t min_occupancy = 50;
    // With D2 <= 0 the ratio is undefined; classify as jump only when D4
    // exceeds this absolute floor, else indeterminate.
    double d4_floor = 1e-9;
};

/// K^(n)(x_b, tau) = mean over start points in bin b of (x(t+tau) - x(t))^n,
/// increments crossing the series end excluded. Cells with occupancy below
/// min_occupancy are NaN. Bins are processed independently (and in parallel
/// when OpenMP is enabled) with time-ordered summation inside each bin, so
/// the result is identical for every thread count.
[[nodiscard]] MomentTable raw_conditional_moments(
    const TimeSeries& series, const binning::BinGrid& grid,
    std::span<const int> orders, std::span<const int> lags,
    std::size_t min_occupancy = 50);

/// Per (bin, order): OLS of K/(tau dt) on tau dt over populated lags.
/// The intercept is the infinitesimal moment M^(n)(x_b). Cells with fewer
/// than 3 populated lags are marked absent. sigma_w is left 0; apply
/// weighted_errors (or use km_analysis).
[[nodiscard]] std::vector<std::array<Regression, 6>> infinitesimal_moments(
    const MomentTable& table);

/// The finite-lag correction algebra in sampling-step units (one step = one
/// time unit). NaN inputs propagate to every F that uses them.
[[nodiscard]] std::array<double, 6> correct_moments(
    const std::array<double, 6>& M);

/// Same algebra for per-unit-time moments at sampling interval dt: scales
/// to step units (M_n dt), corrects, and scales back (F_n / dt). Identical
/// to correct_moments at dt = 1.
[[nodiscard]] std::array<double, 6> correct_moments_scaled(
    const std::array<double, 6>& M, double dt);

struct Coefficients {
    std::array<double, 6> D{};
    double ratio = 0.0;
    bool ratio_defined = false;
    Classification classification = Classification::Indeterminate;
};

/// D[n] = F[n]/n!; ratio = D4/D2; diffusive iff ratio < 0.1 (strict: the
/// boundary value classifies as jump). Nonpositive D2 leaves the ratio
/// undefined and classifies by the D4 floor.
[[nodiscard]] Coefficients km_coefficients(const std::array<double, 6>& F,
                                           double d4_floor = 1e-9);

/// sigma_w = sigma_intercept * sqrt(1 - r2).
[[nodiscard]] double weighted_error(double sigma_intercept, double r2);

/// The full per-bin chain: moments, regressions, corrections (applied at
/// the sampling-interval scale), coefficients, weighted errors.
[[nodiscard]] KMResult km_analysis(const TimeSeries& series,
                                   const binning::BinGrid& grid,
                                   const KMOptions& options = {});

} // namespace jdkm::km

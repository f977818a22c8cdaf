#pragma once

// Weak-stationarity screening: augmented Dickey-Fuller unit-root test
// (constant-only regression, response-surface p-values) and the KPSS
// level-stationarity test.

#include <optional>
#include <span>

#include "jdkm/series.hpp"

namespace jdkm::stationarity {

struct AdfResult {
    double t_stat = 0.0;
    double p_value = 1.0;
    int lags_used = 0;
    bool p_floored = false; // raw surface value fell below the 1e-4 floor
    bool p_capped = false;  // statistic beyond the surface's upper range
};

struct KpssResult {
    double stat = 0.0;
    double p_value = 0.0;
    bool p_floored = false; // stat above the 1% critical value
    bool p_capped = false;  // stat below the 10% critical value
};

enum class Verdict { Stationary, Nonstationary, Ambiguous };

[[nodiscard]] const char* verdict_name(Verdict verdict);

struct StationarityReport {
    AdfResult adf;
    KpssResult kpss;
    Verdict verdict = Verdict::Ambiguous;
};

/// Fits dx_t = alpha + gamma x_{t-1} + sum_i beta_i dx_{t-i} + e by OLS and
/// returns the t statistic of gamma with its MacKinnon response-surface
/// p-value (constant-only case), floored at 1e-4. Lag order defaults to
/// Schwert's rule floor(12 (N/100)^(1/4)). Throws std::invalid_argument on
/// series shorter than 20 + lags or exactly collinear regressors.
[[nodiscard]] AdfResult adf_test(std::span<const double> x,
                                 std::optional<int> max_lags = std::nullopt);

/// Level-stationarity statistic N^-2 sum S_t^2 / lrv with Bartlett-kernel
/// long-run variance at the Newey-West bandwidth floor(4 (N/100)^(1/4));
/// p-value interpolated from the standard critical-value table, capped at
/// 0.1 and floored at 0.01. Throws std::invalid_argument on series shorter
/// than 20 and std::runtime_error if the long-run variance is <= 0.
[[nodiscard]] KpssResult kpss_test(std::span<const double> x);

/// Both tests plus the joint verdict: stationary iff ADF rejects
/// (p < 0.05) and KPSS does not (p >= 0.05); nonstationary on the exact
/// mirror; ambiguous otherwise.
[[nodiscard]] StationarityReport stationarity_report(
    const TimeSeries& series, std::optional<int> adf_lags = std::nullopt);

} // namespace jdkm::stationarity

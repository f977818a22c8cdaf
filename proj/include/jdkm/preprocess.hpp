#pragma once

// Removal of deterministic daily and seasonal structure: centered moving
// average across days and a cubic fit to the mean intraday profile.

#include <array>
#include <vector>

#include "jdkm/series.hpp"

namespace jdkm::preprocess {

struct IntradayProfile {
    std::vector<double> means;          // across-days mean per intraday index
    std::array<double, 4> cubic_coeffs; // a0 + a1 i + a2 i^2 + a3 i^3
};

struct DetrendResult {
    TimeSeries trend;
    TimeSeries fluct; // values - trend, same length
};

/// Centered moving average over window_days * points_per_day points; the
/// window shrinks symmetrically at the series edges so no samples are
/// dropped. Throws std::invalid_argument if the series is shorter than one
/// full window.
[[nodiscard]] DetrendResult moving_average_detrend(const TimeSeries& series,
                                                   int window_days = 21);

/// Mean value at each intraday index plus the least-squares cubic through
/// those means. Series length must be an exact multiple of points_per_day.
[[nodiscard]] IntradayProfile intraday_profile(const TimeSeries& series);

/// Subtract the fitted cubic evaluated at (t mod points_per_day).
[[nodiscard]] TimeSeries remove_intraday(const TimeSeries& series,
                                         const IntradayProfile& profile);

enum class DetrendOrder { IntradayFirst, MovingAverageFirst };

/// The composite detrend used by the pipeline: both steps, in either order.
[[nodiscard]] TimeSeries detrend(const TimeSeries& series, int window_days,
                                 DetrendOrder order = DetrendOrder::IntradayFirst);

} // namespace jdkm::preprocess

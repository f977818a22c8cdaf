#include "jdkm/preprocess.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "jdkm/ols.hpp"

namespace jdkm::preprocess {

DetrendResult moving_average_detrend(const TimeSeries& series, int window_days) {
    validate(series);
    if (window_days < 1)
        throw std::invalid_argument("moving_average_detrend: window_days must be >= 1");
    const std::size_t n = series.values.size();
    const std::size_t window =
        static_cast<std::size_t>(window_days) *
        static_cast<std::size_t>(series.points_per_day);
    if (n < window)
        throw std::invalid_argument(
            "moving_average_detrend: series shorter than one full window");

    // Long-double prefix sums keep the mean shift-equivariant to ~1e-12
    // even on 10^4-point windows far from zero.
    std::vector<long double> prefix(n + 1, 0.0L);
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] + static_cast<long double>(series.values[i]);

    const std::size_t half = window / 2;
    DetrendResult out;
    out.trend = series;
    out.fluct = series;
    for (std::size_t t = 0; t < n; ++t) {
        // Centered window, shrinking symmetrically near the edges.
        const std::size_t h = std::min({half, t, n - 1 - t});
        const std::size_t a = t - h;
        const std::size_t b = t + h;
        const long double sum = prefix[b + 1] - prefix[a];
        const double m =
            static_cast<double>(sum / static_cast<long double>(b - a + 1));
        out.trend.values[t] = m;
        out.fluct.values[t] = series.values[t] - m;
    }
    return out;
}

IntradayProfile intraday_profile(const TimeSeries& series) {
    validate(series);
    const std::size_t n = series.values.size();
    const auto ppd = static_cast<std::size_t>(series.points_per_day);
    if (n % ppd != 0)
        throw std::invalid_argument(
            "intraday_profile: length must be a multiple of points_per_day");
    const std::size_t days = n / ppd;

    IntradayProfile prof;
    prof.means.assign(ppd, 0.0);
    for (std::size_t d = 0; d < days; ++d)
        for (std::size_t i = 0; i < ppd; ++i)
            prof.means[i] += series.values[d * ppd + i];
    for (auto& m : prof.means) m /= static_cast<double>(days);

    // Least-squares cubic in the intraday index.
    std::vector<std::vector<double>> cols(4, std::vector<double>(ppd));
    for (std::size_t i = 0; i < ppd; ++i) {
        const double x = static_cast<double>(i);
        cols[0][i] = 1.0;
        cols[1][i] = x;
        cols[2][i] = x * x;
        cols[3][i] = x * x * x;
    }
    const ols::Fit fit = ols::fit(prof.means, cols);
    for (std::size_t j = 0; j < 4; ++j) prof.cubic_coeffs[j] = fit.coef[j];
    return prof;
}

TimeSeries remove_intraday(const TimeSeries& series, const IntradayProfile& profile) {
    validate(series);
    const std::size_t n = series.values.size();
    const auto ppd = static_cast<std::size_t>(series.points_per_day);
    if (n % ppd != 0)
        throw std::invalid_argument(
            "remove_intraday: length must be a multiple of points_per_day");
    if (profile.means.size() != ppd)
        throw std::invalid_argument("remove_intraday: profile grid mismatch");

    TimeSeries out = series;
    const auto& c = profile.cubic_coeffs;
    for (std::size_t t = 0; t < n; ++t) {
        const double i = static_cast<double>(t % ppd);
        out.values[t] -= ((c[3] * i + c[2]) * i + c[1]) * i + c[0];
    }
    return out;
}

TimeSeries detrend(const TimeSeries& series, int window_days, DetrendOrder order) {
    if (order == DetrendOrder::IntradayFirst) {
        const IntradayProfile prof = intraday_profile(series);
        const TimeSeries flat = remove_intraday(series, prof);
        return moving_average_detrend(flat, window_days).fluct;
    }
    const TimeSeries fluct = moving_average_detrend(series, window_days).fluct;
    const IntradayProfile prof = intraday_profile(fluct);
    return remove_intraday(fluct, prof);
}

} // namespace jdkm::preprocess

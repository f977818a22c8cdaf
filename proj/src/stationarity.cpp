#include "jdkm/stationarity.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "jdkm/ols.hpp"
#include "jdkm/special.hpp"

namespace jdkm::stationarity {

namespace {

constexpr double kAdfPFloor = 1e-4;

// Response-surface constants for the constant-only unit-root test
// (MacKinnon's asymptotic approximation).
constexpr double kTauMax = 2.74;
constexpr double kTauMin = -18.83;
constexpr double kTauStar = -1.61;

double adf_p_from_tau(double tau, bool& floored, bool& capped) {
    floored = false;
    capped = false;
    if (tau > kTauMax) {
        capped = true;
        return 1.0;
    }
    if (tau < kTauMin) {
        floored = true;
        return kAdfPFloor;
    }
    double z;
    if (tau <= kTauStar) {
        z = 2.1659 + tau * (1.4412 + tau * 0.038269);
    } else {
        z = 1.7339 + tau * (0.93202 + tau * (-0.12745 + tau * -0.010368));
    }
    double p = special::norm_cdf(z);
    if (p < kAdfPFloor) {
        floored = true;
        p = kAdfPFloor;
    }
    if (p > 1.0) {
        capped = true;
        p = 1.0;
    }
    return p;
}

int schwert_lags(std::size_t n) {
    return static_cast<int>(
        std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
}

} // namespace

AdfResult adf_test(std::span<const double> x, std::optional<int> max_lags) {
    const std::size_t n = x.size();
    const int p = max_lags.value_or(schwert_lags(n));
    if (p < 0) throw std::invalid_argument("adf_test: negative lag order");
    if (n < static_cast<std::size_t>(20 + p))
        throw std::invalid_argument("adf_test: series too short for lag order");

    // First differences; regression rows start after the longest lag.
    std::vector<double> dy(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) dy[t] = x[t + 1] - x[t];

    const std::size_t rows = dy.size() - static_cast<std::size_t>(p);
    std::vector<double> y(rows);
    std::vector<std::vector<double>> cols(2 + static_cast<std::size_t>(p),
                                          std::vector<double>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + static_cast<std::size_t>(p);
        y[r] = dy[t];
        cols[0][r] = 1.0;     // constant
        cols[1][r] = x[t];    // lagged level
        for (int i = 1; i <= p; ++i)
            cols[1 + static_cast<std::size_t>(i)][r] =
                dy[t - static_cast<std::size_t>(i)];
    }

    const ols::Fit fit = ols::fit(y, cols);
    if (fit.se[1] <= 0.0)
        throw std::runtime_error("adf_test: degenerate regression (constant series?)");

    AdfResult out;
    out.t_stat = fit.coef[1] / fit.se[1];
    out.lags_used = p;
    out.p_value = adf_p_from_tau(out.t_stat, out.p_floored, out.p_capped);
    return out;
}

KpssResult kpss_test(std::span<const double> x) {
    const std::size_t n = x.size();
    if (n < 20) throw std::invalid_argument("kpss_test: need at least 20 points");

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> e(n);
    for (std::size_t t = 0; t < n; ++t) e[t] = x[t] - mean;

    // Numerator: scaled partial sums of the demeaned series.
    long double cum = 0.0L;
    long double s2 = 0.0L;
    for (std::size_t t = 0; t < n; ++t) {
        cum += e[t];
        s2 += cum * cum;
    }

    // Bartlett long-run variance with the short Newey-West bandwidth.
    const int q = static_cast<int>(
        std::floor(4.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));
    double lrv = 0.0;
    for (int j = 0; j <= q; ++j) {
        double gamma = 0.0;
        for (std::size_t t = static_cast<std::size_t>(j); t < n; ++t)
            gamma += e[t] * e[t - static_cast<std::size_t>(j)];
        gamma /= static_cast<double>(n);
        lrv += (j == 0) ? gamma
                        : 2.0 * (1.0 - static_cast<double>(j) / (q + 1.0)) * gamma;
    }
    if (!(lrv > 0.0))
        throw std::runtime_error("kpss_test: nonpositive long-run variance");

    KpssResult out;
    out.stat = static_cast<double>(s2) /
               (static_cast<double>(n) * static_cast<double>(n) * lrv);

    // Interpolate the standard level-stationarity critical-value table.
    static constexpr double crit[4] = {0.347, 0.463, 0.574, 0.739};
    static constexpr double pval[4] = {0.10, 0.05, 0.025, 0.01};
    out.p_floored = false;
    out.p_capped = false;
    if (out.stat <= crit[0]) {
        out.p_value = 0.10;
        out.p_capped = true;
    } else if (out.stat >= crit[3]) {
        out.p_value = 0.01;
        out.p_floored = true;
    } else {
        std::size_t k = 0;
        while (out.stat > crit[k + 1]) ++k;
        const double w = (out.stat - crit[k]) / (crit[k + 1] - crit[k]);
        out.p_value = pval[k] + w * (pval[k + 1] - pval[k]);
    }
    return out;
}

StationarityReport stationarity_report(const TimeSeries& series,
                                       std::optional<int> adf_lags) {
    validate(series);
    StationarityReport rep;
    rep.adf = adf_test(series.values, adf_lags);
    rep.kpss = kpss_test(series.values);
    const bool adf_rejects_unit_root = rep.adf.p_value < 0.05;
    const bool kpss_keeps_stationarity = rep.kpss.p_value >= 0.05;
    if (adf_rejects_unit_root && kpss_keeps_stationarity)
        rep.verdict = Verdict::Stationary;
    else if (!adf_rejects_unit_root && !kpss_keeps_stationarity)
        rep.verdict = Verdict::Nonstationary;
    else
        rep.verdict = Verdict::Ambiguous;
    return rep;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Stationary: return "stationary";
        case Verdict::Nonstationary: return "nonstationary";
        case Verdict::Ambiguous: return "ambiguous";
    }
    throw std::invalid_argument("verdict_name: unknown verdict");
}

} // namespace jdkm::stationarity

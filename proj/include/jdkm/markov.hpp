#pragma once

// Markov-time estimation: conditional-entropy saturation over a joint
// histogram of (x_t, x_{t+tau}) pairs, and the PACF cutoff against the
// 1.96/sqrt(N) band.

#include <span>
#include <vector>

#include "jdkm/series.hpp"

namespace jdkm::markov {

struct EntropyPoint {
    int tau = 0;
    double H = 0.0;  // H(x_{t+tau} | x_t), natural log
    double dH = 0.0; // H(tau+1) - H(tau); NaN for the last scanned tau
};

struct TauEstimate {
    int tau = 0;
    bool saturated = false; // nothing qualified within the scan range
};

struct MarkovConfig {
    int n_bins = 30;
    double threshold = 0.005;
    int tau_max = 20;
    int pacf_max_lag = 20;
};

struct MarkovReport {
    std::vector<EntropyPoint> entropy_curve;
    TauEstimate tau_m_entropy;
    std::vector<double> pacf;   // lags 1..max_lag
    double pacf_bound = 0.0;    // 1.96 / sqrt(N)
    TauEstimate tau_m_pacf;
    std::vector<double> acf;    // diagnostic only, lags 1..max_lag
    int tau_m = 0;              // max of the two estimates (pipeline gate)
};

/// H(x_{t+tau} | x_t) from a 2-D histogram with n_bins equal-width bins per
/// axis spanning [min, max] of the series, natural log, 0 log 0 := 0.
/// Throws std::invalid_argument on bad tau/n_bins and std::runtime_error
/// when fewer than n_bins^2 / 10 pairs are available.
[[nodiscard]] double conditional_entropy(std::span<const double> x, int tau,
                                         int n_bins = 30);

/// Entropy at every tau in 1..tau_max, with forward differences attached.
[[nodiscard]] std::vector<EntropyPoint> entropy_profile(
    std::span<const double> x, int tau_max = 20, int n_bins = 30);

/// Smallest tau with H(tau+1) - H(tau) < threshold; tau_max with the
/// saturated flag when none qualifies.
[[nodiscard]] TauEstimate markov_time_entropy(std::span<const double> x,
                                              double threshold = 0.005,
                                              int n_bins = 30,
                                              int tau_max = 20);

/// PACF at lags 1..max_lag by Levinson-Durbin recursion on the biased
/// sample autocovariances. Requires length > 3 * max_lag and nonzero
/// variance.
[[nodiscard]] std::vector<double> pacf_yule_walker(std::span<const double> x,
                                                   int max_lag = 20);

/// Sample autocorrelations at lags 1..max_lag (diagnostic only).
[[nodiscard]] std::vector<double> acf(std::span<const double> x, int max_lag);

/// Smallest lag whose |PACF| < 1.96/sqrt(N); max_lag with the saturated
/// flag when none qualifies.
[[nodiscard]] TauEstimate markov_time_pacf(std::span<const double> x,
                                           int max_lag = 20);

[[nodiscard]] MarkovReport markov_report(const TimeSeries& series,
                                         const MarkovConfig& config = {});

} // namespace jdkm::markov

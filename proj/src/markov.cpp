#include "jdkm/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace jdkm::markov {

namespace {

std::size_t bin_of(double v, double lo, double inv_width, int n_bins) {
    const auto raw = static_cast<long>((v - lo) * inv_width);
    const long clamped = std::clamp(raw, 0L, static_cast<long>(n_bins - 1));
    return static_cast<std::size_t>(clamped);
}

// Entropy of a count vector in nats, with 0 log 0 := 0.
double entropy_of_counts(const std::vector<std::int64_t>& counts,
                         std::int64_t total) {
    double h = 0.0;
    for (std::int64_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log(p);
    }
    return h;
}

} // namespace

double conditional_entropy(std::span<const double> x, int tau, int n_bins) {
    if (tau < 1) throw std::invalid_argument("conditional_entropy: tau must be >= 1");
    if (n_bins < 2)
        throw std::invalid_argument("conditional_entropy: n_bins must be >= 2");
    if (x.size() <= static_cast<std::size_t>(tau))
        throw std::runtime_error("conditional_entropy: series shorter than lag");
    const std::size_t n_pairs = x.size() - static_cast<std::size_t>(tau);
    const auto nb = static_cast<std::size_t>(n_bins);
    if (n_pairs < nb * nb / 10)
        throw std::runtime_error(
            "conditional_entropy: too few pairs for the joint histogram");

    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo))
        throw std::runtime_error("conditional_entropy: constant series");
    const double inv_width = static_cast<double>(n_bins) / (hi - lo);

    // Joint histogram of (x_t, x_{t+tau}); integer counts make the result
    // independent of accumulation order.
    std::vector<std::int64_t> joint(nb * nb, 0);
    for (std::size_t t = 0; t < n_pairs; ++t) {
        const std::size_t i = bin_of(x[t], lo, inv_width, n_bins);
        const std::size_t j =
            bin_of(x[t + static_cast<std::size_t>(tau)], lo, inv_width, n_bins);
        ++joint[i * nb + j];
    }
    std::vector<std::int64_t> marginal(nb, 0);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j) marginal[i] += joint[i * nb + j];

    const auto total = static_cast<std::int64_t>(n_pairs);
    // H(Y|X) = H(X,Y) - H(X).
    return entropy_of_counts(joint, total) - entropy_of_counts(marginal, total);
}

std::vector<EntropyPoint> entropy_profile(std::span<const double> x, int tau_max,
                                          int n_bins) {
    if (tau_max < 1)
        throw std::invalid_argument("entropy_profile: tau_max must be >= 1");
    std::vector<EntropyPoint> out(static_cast<std::size_t>(tau_max));

    // Lags are independent; any scheduling yields the same integers.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int tau = 1; tau <= tau_max; ++tau) {
        auto& pt = out[static_cast<std::size_t>(tau - 1)];
        pt.tau = tau;
        pt.H = conditional_entropy(x, tau, n_bins);
    }
    for (int tau = 1; tau < tau_max; ++tau) {
        auto& pt = out[static_cast<std::size_t>(tau - 1)];
        pt.dH = out[static_cast<std::size_t>(tau)].H - pt.H;
    }
    out.back().dH = std::numeric_limits<double>::quiet_NaN();
    return out;
}

TauEstimate markov_time_entropy(std::span<const double> x, double threshold,
                                int n_bins, int tau_max) {
    const auto profile = entropy_profile(x, tau_max, n_bins);
    for (const auto& pt : profile) {
        if (std::isnan(pt.dH)) continue;
        if (pt.dH < threshold) return TauEstimate{pt.tau, false};
    }
    return TauEstimate{tau_max, true};
}

std::vector<double> acf(std::span<const double> x, int max_lag) {
    if (max_lag < 1) throw std::invalid_argument("acf: max_lag must be >= 1");
    const std::size_t n = x.size();
    if (n <= static_cast<std::size_t>(max_lag))
        throw std::invalid_argument("acf: series shorter than max_lag");

    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> acv(static_cast<std::size_t>(max_lag) + 1, 0.0);
    for (int k = 0; k <= max_lag; ++k) {
        double s = 0.0;
        for (std::size_t t = static_cast<std::size_t>(k); t < n; ++t)
            s += (x[t] - mean) * (x[t - static_cast<std::size_t>(k)] - mean);
        acv[static_cast<std::size_t>(k)] = s / static_cast<double>(n); // biased
    }
    if (!(acv[0] > 0.0)) throw std::runtime_error("acf: zero variance");

    std::vector<double> out(static_cast<std::size_t>(max_lag));
    for (int k = 1; k <= max_lag; ++k)
        out[static_cast<std::size_t>(k - 1)] =
            acv[static_cast<std::size_t>(k)] / acv[0];
    return out;
}

std::vector<double> pacf_yule_walker(std::span<const double> x, int max_lag) {
    if (max_lag < 1)
        throw std::invalid_argument("pacf_yule_walker: max_lag must be >= 1");
    if (x.size() <= 3 * static_cast<std::size_t>(max_lag))
        throw std::invalid_argument(
            "pacf_yule_walker: need length > 3 * max_lag");

    const std::vector<double> rho = acf(x, max_lag);

    // Levinson-Durbin on the biased autocorrelations; the reflection
    // coefficients are the partial autocorrelations and stay within [-1, 1]
    // because the biased estimate is positive semidefinite.
    std::vector<double> pacf(static_cast<std::size_t>(max_lag), 0.0);
    std::vector<double> a(static_cast<std::size_t>(max_lag) + 1, 0.0);
    std::vector<double> prev(a);
    double err = 1.0; // normalized: acv0 scaled out
    for (int k = 1; k <= max_lag; ++k) {
        double acc = rho[static_cast<std::size_t>(k - 1)];
        for (int j = 1; j < k; ++j)
            acc -= a[static_cast<std::size_t>(j)] *
                   rho[static_cast<std::size_t>(k - j - 1)];
        const double kappa = (err > 0.0) ? acc / err : 0.0;
        pacf[static_cast<std::size_t>(k - 1)] = kappa;
        prev = a;
        a[static_cast<std::size_t>(k)] = kappa;
        for (int j = 1; j < k; ++j)
            a[static_cast<std::size_t>(j)] =
                prev[static_cast<std::size_t>(j)] -
                kappa * prev[static_cast<std::size_t>(k - j)];
        err *= (1.0 - kappa * kappa);
    }
    return pacf;
}

TauEstimate markov_time_pacf(std::span<const double> x, int max_lag) {
    const std::vector<double> pacf = pacf_yule_walker(x, max_lag);
    const double bound = 1.96 / std::sqrt(static_cast<double>(x.size()));
    for (int k = 1; k <= max_lag; ++k)
        if (std::fabs(pacf[static_cast<std::size_t>(k - 1)]) < bound)
            return TauEstimate{k, false};
    return TauEstimate{max_lag, true};
}

MarkovReport markov_report(const TimeSeries& series, const MarkovConfig& config) {
    validate(series);
    MarkovReport rep;
    rep.entropy_curve =
        entropy_profile(series.values, config.tau_max, config.n_bins);
    rep.tau_m_entropy = markov_time_entropy(series.values, config.threshold,
                                            config.n_bins, config.tau_max);
    rep.pacf = pacf_yule_walker(series.values, config.pacf_max_lag);
    rep.pacf_bound = 1.96 / std::sqrt(static_cast<double>(series.values.size()));
    rep.tau_m_pacf = markov_time_pacf(series.values, config.pacf_max_lag);
    rep.acf = acf(series.values, config.pacf_max_lag);
    rep.tau_m = std::max(rep.tau_m_entropy.tau, rep.tau_m_pacf.tau);
    return rep;
}

} // namespace jdkm::markov

#include "jdkm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace jdkm::stats {

double mean(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("mean: empty input");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
    if (x.size() < 2) throw std::invalid_argument("variance: need at least 2 samples");
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) {
        const double d = v - m;
        s += d * d;
    }
    return s / static_cast<double>(x.size() - 1);
}

double stddev(std::span<const double> x) { return std::sqrt(variance(x)); }

double skewness(std::span<const double> x) {
    if (x.size() < 3) throw std::invalid_argument("skewness: need at least 3 samples");
    const double m = mean(x);
    double m2 = 0.0;
    double m3 = 0.0;
    for (double v : x) {
        const double d = v - m;
        m2 += d * d;
        m3 += d * d * d;
    }
    const double n = static_cast<double>(x.size());
    m2 /= n;
    m3 /= n;
    if (m2 <= 0.0) return 0.0;
    return m3 / std::pow(m2, 1.5);
}

double quantile(std::span<const double> sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile: empty input");
    if (!(q >= 0.0) || !(q <= 1.0))
        throw std::invalid_argument("quantile: q must lie in [0, 1]");
    // Linear interpolation between order statistics (the common "type 7" rule).
    const double h = q * (static_cast<double>(sorted.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double iqr(std::span<const double> x) {
    if (x.empty()) throw std::invalid_argument("iqr: empty input");
    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());
    return quantile(s, 0.75) - quantile(s, 0.25);
}

} // namespace jdkm::stats

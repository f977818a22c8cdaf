#include "jdkm/special.hpp"

#include <cmath>
#include <stdexcept>

namespace jdkm::special {

double digamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("digamma: argument must be positive");
    double acc = 0.0;
    // Shift into the asymptotic regime.
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Stirling series: ln x - 1/(2x) - sum B_2n / (2n x^{2n}).
    double series = -1.0 / 12.0;
    double p = inv2;
    double sum = series * p;
    p *= inv2;
    sum += (1.0 / 120.0) * p;
    p *= inv2;
    sum += (-1.0 / 252.0) * p;
    p *= inv2;
    sum += (1.0 / 240.0) * p;
    p *= inv2;
    sum += (-1.0 / 132.0) * p;
    p *= inv2;
    sum += (691.0 / 32760.0) * p;
    return acc + std::log(x) - 0.5 * inv + sum;
}

double trigamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("trigamma: argument must be positive");
    double acc = 0.0;
    while (x < 10.0) {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // 1/x + 1/(2x^2) + sum B_2n x^{-2n-1}.
    double sum = 0.0;
    double p = inv * inv2; // x^{-3}
    sum += (1.0 / 6.0) * p;
    p *= inv2;
    sum += (-1.0 / 30.0) * p;
    p *= inv2;
    sum += (1.0 / 42.0) * p;
    p *= inv2;
    sum += (-1.0 / 30.0) * p;
    p *= inv2;
    sum += (5.0 / 66.0) * p;
    return acc + inv + 0.5 * inv2 + sum;
}

double norm_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double norm_quantile(double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::domain_error("norm_quantile: p must lie strictly inside (0, 1)");

    // Rational approximation (Beasley-Springer with Moro tails), then one
    // Halley step against the erfc-based CDF to reach full double precision.
    static constexpr double a[4] = {2.50662823884, -18.61500062529,
                                    41.39119773534, -25.44106049637};
    static constexpr double b[4] = {-8.47351093090, 23.08336743743,
                                    -21.06224101826, 3.13082909833};
    static constexpr double c[9] = {
        0.3374754822726147, 0.9761690190917186, 0.1607979714918209,
        0.0276438810333863, 0.0038405729373609, 0.0003951896511919,
        0.0000321767881768, 0.0000002888167364, 0.0000003960315187};

    const double y = p - 0.5;
    double x;
    if (std::fabs(y) < 0.42) {
        const double r = y * y;
        x = y * (((a[3] * r + a[2]) * r + a[1]) * r + a[0]) /
            ((((b[3] * r + b[2]) * r + b[1]) * r + b[0]) * r + 1.0);
    } else {
        double r = (y > 0.0) ? 1.0 - p : p;
        r = std::log(-std::log(r));
        double s = c[8];
        for (int i = 7; i >= 0; --i) s = s * r + c[i];
        x = (y > 0.0) ? s : -s;
    }

    // Halley refinement: e = Phi(x) - p, correct via the normal density.
    const double e = norm_cdf(x) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

} // namespace jdkm::special

#include "jdkm/jumps.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "jdkm/km.hpp"
#include "jdkm/ols.hpp"

namespace jdkm::jumps {

GlobalMoments global_infinitesimal_moments(const TimeSeries& series,
                                           std::span<const int> lags, double dt) {
    validate(series);
    if (!(dt > 0.0))
        throw std::invalid_argument(
            "global_infinitesimal_moments: dt must be positive");
    if (lags.size() < 3)
        throw std::invalid_argument(
            "global_infinitesimal_moments: need at least 3 lags to regress");
    const std::size_t n = series.values.size();
    for (int tau : lags) {
        if (tau < 1)
            throw std::invalid_argument(
                "global_infinitesimal_moments: lags must be >= 1");
        if (static_cast<std::size_t>(tau) >= n)
            throw std::invalid_argument(
                "global_infinitesimal_moments: lag reaches past the series end");
    }

    // Unconditional increment moments: the whole series acts as one bin.
    const std::size_t n_lags = lags.size();
    std::vector<std::array<double, 6>> K(n_lags);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t li = 0; li < static_cast<std::ptrdiff_t>(n_lags); ++li) {
        const auto tau = static_cast<std::size_t>(lags[static_cast<std::size_t>(li)]);
        long double sums[6] = {0.0L, 0.0L, 0.0L, 0.0L, 0.0L, 0.0L};
        for (std::size_t t = 0; t + tau < n; ++t) {
            const double dx = series.values[t + tau] - series.values[t];
            long double p = 1.0L;
            for (int m = 0; m < 6; ++m) {
                p *= dx;
                sums[m] += p;
            }
        }
        const auto pairs = static_cast<long double>(n - tau);
        for (int m = 0; m < 6; ++m)
            K[static_cast<std::size_t>(li)][static_cast<std::size_t>(m)] =
                static_cast<double>(sums[m] / pairs);
    }

    // Same regression as the per-bin estimator: K^(n)/(tau dt) on tau dt.
    std::array<double, 6> M{};
    std::vector<double> xs(n_lags);
    std::vector<double> ys(n_lags);
    for (std::size_t li = 0; li < n_lags; ++li)
        xs[li] = static_cast<double>(lags[li]) * dt;
    for (std::size_t m = 0; m < 6; ++m) {
        for (std::size_t li = 0; li < n_lags; ++li) ys[li] = K[li][m] / xs[li];
        M[m] = ols::fit_line(xs, ys).intercept;
    }

    const std::array<double, 6> F = km::correct_moments_scaled(M, dt);
    return GlobalMoments{F[1], F[3], F[5]};
}

JumpParams invert_jump_params(double M2, double M4, double M6) {
    if (!(M4 > 0.0) || !(M6 > 0.0))
        throw std::domain_error(
            "invert_jump_params: M4 and M6 must be positive for the inversion");

    JumpParams out;
    out.sigma_xi2 = M6 / (5.0 * M4);
    out.lambda = M4 / (3.0 * out.sigma_xi2 * out.sigma_xi2);
    out.m2 = M2;
    out.d_jump = out.lambda * out.sigma_xi2;
    out.b2 = M2 - out.d_jump;
    out.negative_b2 = out.b2 < 0.0;
    out.f_jump = (M2 != 0.0) ? out.d_jump / M2 : 0.0;
    return out;
}

Decomposition variance_decomposition(const JumpParams& params) {
    Decomposition out;
    out.d_jump = params.d_jump;
    out.d_cont = params.m2 - params.d_jump;
    out.f_jump = params.f_jump;
    out.negative_cont = out.d_cont < 0.0;
    return out;
}

SafeInversion invert_or_diffusion(const GlobalMoments& moments) {
    SafeInversion out;
    if (moments.M4 > 0.0 && moments.M6 > 0.0) {
        out.params = invert_jump_params(moments.M2, moments.M4, moments.M6);
        out.decomp = variance_decomposition(out.params);
        out.inverted = true;
        return out;
    }
    out.params.m2 = moments.M2;
    out.params.b2 = moments.M2;
    out.params.negative_b2 = moments.M2 < 0.0;
    out.decomp.d_cont = moments.M2;
    out.decomp.negative_cont = moments.M2 < 0.0;
    out.inverted = false;
    return out;
}

} // namespace jdkm::jumps

#include "jdkm/km.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "jdkm/ols.hpp"

namespace jdkm::km {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_orders_lags(std::span<const int> orders, std::span<const int> lags,
                       std::size_t series_length) {
    if (orders.empty())
        throw std::invalid_argument("raw_conditional_moments: no orders requested");
    for (int n : orders)
        if (n < 1 || n > 6)
            throw std::invalid_argument(
                "raw_conditional_moments: orders must lie in 1..6");
    if (lags.empty())
        throw std::invalid_argument("raw_conditional_moments: no lags requested");
    for (int tau : lags) {
        if (tau < 1)
            throw std::invalid_argument("raw_conditional_moments: lags must be >= 1");
        if (static_cast<std::size_t>(tau) >= series_length)
            throw std::invalid_argument(
                "raw_conditional_moments: lag reaches past the series end");
    }
}

} // namespace

std::string classification_name(Classification c) {
    switch (c) {
        case Classification::Diffusive: return "diffusive";
        case Classification::Jump: return "jump";
        case Classification::Indeterminate: return "indeterminate";
    }
    throw std::invalid_argument("classification_name: unknown classification");
}

MomentTable raw_conditional_moments(const TimeSeries& series,
                                    const binning::BinGrid& grid,
                                    std::span<const int> orders,
                                    std::span<const int> lags,
                                    std::size_t min_occupancy) {
    validate(series);
    const std::size_t n = series.values.size();
    check_orders_lags(orders, lags, n);
    const std::size_t n_bins = grid.centers.size();
    if (n_bins == 0)
        throw std::invalid_argument("raw_conditional_moments: empty grid");

    MomentTable table;
    table.orders.assign(orders.begin(), orders.end());
    table.lags.assign(lags.begin(), lags.end());
    table.n_bins = n_bins;
    table.dt = series.dt;
    const std::size_t n_lags = table.lags.size();
    const std::size_t n_orders = table.orders.size();
    table.K.assign(n_orders * n_bins * n_lags, kNaN);
    table.occupancy.assign(n_bins * n_lags, 0);

    // Start points grouped by conditioning bin, kept in time order so the
    // per-bin accumulation below is independent of the thread count.
    std::vector<std::vector<std::size_t>> members(n_bins);
    for (std::size_t t = 0; t < n; ++t) {
        const int b = binning::find_bin(grid, series.values[t]);
        if (b >= 0) members[static_cast<std::size_t>(b)].push_back(t);
    }

    const int max_order =
        *std::max_element(table.orders.begin(), table.orders.end());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(n_bins); ++bi) {
        const auto b = static_cast<std::size_t>(bi);
        for (std::size_t li = 0; li < n_lags; ++li) {
            const auto tau = static_cast<std::size_t>(table.lags[li]);
            long double sums[6] = {0.0L, 0.0L, 0.0L, 0.0L, 0.0L, 0.0L};
            std::size_t count = 0;
            for (const std::size_t t : members[b]) {
                if (t + tau >= n) continue; // increment crosses the series end
                const double dx = series.values[t + tau] - series.values[t];
                long double p = 1.0L;
                for (int m = 1; m <= max_order; ++m) {
                    p *= dx;
                    sums[m - 1] += p;
                }
                ++count;
            }
            table.occupancy[b * n_lags + li] = count;
            if (count < min_occupancy) continue; // cells stay absent (NaN)
            for (std::size_t oi = 0; oi < n_orders; ++oi) {
                const int order = table.orders[oi];
                table.K[(oi * n_bins + b) * n_lags + li] = static_cast<double>(
                    sums[order - 1] / static_cast<long double>(count));
            }
        }
    }
    return table;
}

std::vector<std::array<Regression, 6>> infinitesimal_moments(
    const MomentTable& table) {
    if (!(table.dt > 0.0))
        throw std::invalid_argument("infinitesimal_moments: dt must be positive");
    const std::size_t n_lags = table.lags.size();
    const std::size_t n_bins = table.n_bins;
    std::vector<std::array<Regression, 6>> out(n_bins);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t bi = 0; bi < static_cast<std::ptrdiff_t>(n_bins); ++bi) {
        const auto b = static_cast<std::size_t>(bi);
        for (std::size_t oi = 0; oi < table.orders.size(); ++oi) {
            const int order = table.orders[oi];
            std::vector<double> xs;
            std::vector<double> ys;
            xs.reserve(n_lags);
            ys.reserve(n_lags);
            for (std::size_t li = 0; li < n_lags; ++li) {
                const double k = table.k(oi, b, li);
                if (std::isnan(k)) continue;
                const double t = static_cast<double>(table.lags[li]) * table.dt;
                xs.push_back(t);
                ys.push_back(k / t);
            }
            auto& reg = out[b][static_cast<std::size_t>(order - 1)];
            if (xs.size() < 3) continue; // absent: present stays false
            const ols::LineFit fit = ols::fit_line(xs, ys);
            reg.M = fit.intercept;
            reg.beta = fit.slope;
            reg.r2 = fit.r2;
            reg.sigma_intercept = fit.se_intercept;
            reg.exact = fit.exact;
            reg.present = true;
        }
    }
    return out;
}

std::array<double, 6> correct_moments(const std::array<double, 6>& M) {
    const double m1 = M[0], m2 = M[1], m3 = M[2], m4 = M[3], m5 = M[4], m6 = M[5];
    std::array<double, 6> F{};
    F[0] = m1;
    F[1] = m2 - m1 * m1;
    F[2] = m3 - 3.0 * m1 * m2 + 3.0 * m1 * m1 * m1;
    F[3] = m4 - 4.0 * m1 * m3 + 18.0 * m1 * m1 * m2 - 3.0 * m2 * m2 -
           15.0 * m1 * m1 * m1 * m1;
    F[4] = m5 - 5.0 * m1 * m4 + 30.0 * m1 * m1 * m3 -
           150.0 * m1 * m1 * m1 * m2 + 45.0 * m1 * m2 * m2 - 10.0 * m2 * m3 +
           105.0 * m1 * m1 * m1 * m1 * m1;
    F[5] = m6 - 6.0 * m1 * m5 + 45.0 * m1 * m1 * m4 -
           300.0 * m1 * m1 * m1 * m3 + 1575.0 * m1 * m1 * m1 * m1 * m2 -
           675.0 * m1 * m1 * m2 * m2 + 180.0 * m1 * m2 * m3 +
           45.0 * m2 * m2 * m2 - 15.0 * m2 * m4 - 10.0 * m3 * m3 -
           945.0 * m1 * m1 * m1 * m1 * m1 * m1;
    return F;
}

std::array<double, 6> correct_moments_scaled(const std::array<double, 6>& M,
                                             double dt) {
    if (!(dt > 0.0))
        throw std::invalid_argument("correct_moments_scaled: dt must be positive");
    // The correction algebra mixes products of different moment orders, so
    // it is only dimensionally consistent in sampling-step units. Scale the
    // per-unit-time moments to one step, correct, and scale back.
    std::array<double, 6> step;
    for (std::size_t i = 0; i < 6; ++i) step[i] = M[i] * dt;
    std::array<double, 6> F = correct_moments(step);
    for (auto& f : F) f /= dt;
    return F;
}

Coefficients km_coefficients(const std::array<double, 6>& F, double d4_floor) {
    Coefficients out;
    double fact = 1.0;
    for (std::size_t n = 1; n <= 6; ++n) {
        fact *= static_cast<double>(n);
        out.D[n - 1] = F[n - 1] / fact;
    }
    const double d2 = out.D[1];
    const double d4 = out.D[3];
    if (d2 > 0.0) {
        out.ratio = d4 / d2;
        out.ratio_defined = true;
        out.classification = (out.ratio < 0.1) ? Classification::Diffusive
                                               : Classification::Jump;
    } else {
        out.ratio = kNaN;
        out.ratio_defined = false;
        out.classification = (d4 > d4_floor) ? Classification::Jump
                                             : Classification::Indeterminate;
    }
    return out;
}

double weighted_error(double sigma_intercept, double r2) {
    const double clipped = std::clamp(r2, 0.0, 1.0);
    return sigma_intercept * std::sqrt(1.0 - clipped);
}

KMResult km_analysis(const TimeSeries& series, const binning::BinGrid& grid,
                     const KMOptions& options) {
    const MomentTable table = raw_conditional_moments(
        series, grid, options.orders, options.lags, options.min_occupancy);
    const auto regs = infinitesimal_moments(table);

    KMResult result;
    result.dt = series.dt;
    result.sigma = grid.sigma;
    result.bins.resize(grid.centers.size());
    for (std::size_t b = 0; b < result.bins.size(); ++b) {
        KMBin& bin = result.bins[b];
        bin.center = grid.centers[b];
        bin.occupancy = grid.counts[b];
        bin.reg = regs[b];

        std::array<double, 6> M;
        for (std::size_t i = 0; i < 6; ++i) {
            bin.reg[i].sigma_w =
                bin.reg[i].present
                    ? weighted_error(bin.reg[i].sigma_intercept, bin.reg[i].r2)
                    : 0.0;
            M[i] = bin.reg[i].present ? bin.reg[i].M : kNaN;
        }
        bin.F = correct_moments_scaled(M, series.dt);
        const Coefficients coef = km_coefficients(bin.F, options.d4_floor);
        bin.D = coef.D;
        bin.ratio = coef.ratio;
        bin.ratio_defined = coef.ratio_defined;
        bin.classification = coef.classification;
    }
    return result;
}

} // namespace jdkm::km

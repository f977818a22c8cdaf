#include "jdkm/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>

namespace jdkm::ref {

km::MomentTable raw_conditional_moments(const TimeSeries& series,
                                        const binning::BinGrid& grid,
                                        std::span<const int> orders,
                                        std::span<const int> lags,
                                        std::size_t min_occupancy) {
    validate(series);
    if (orders.empty() || lags.empty())
        throw std::invalid_argument("ref::raw_conditional_moments: empty request");
    const std::size_t n = series.values.size();
    const std::size_t n_bins = grid.centers.size();

    km::MomentTable table;
    table.orders.assign(orders.begin(), orders.end());
    table.lags.assign(lags.begin(), lags.end());
    table.n_bins = n_bins;
    table.dt = series.dt;
    const std::size_t n_lags = table.lags.size();
    const std::size_t n_orders = table.orders.size();
    table.K.assign(n_orders * n_bins * n_lags,
                   std::numeric_limits<double>::quiet_NaN());
    table.occupancy.assign(n_bins * n_lags, 0);

    const int max_order =
        *std::max_element(table.orders.begin(), table.orders.end());

    // One full pass over the series per (bin, lag) pair. Slow but obviously
    // in time order, which is what the fast path must reproduce.
    for (std::size_t b = 0; b < n_bins; ++b) {
        for (std::size_t li = 0; li < n_lags; ++li) {
            const auto tau = static_cast<std::size_t>(table.lags[li]);
            long double sums[6] = {0.0L, 0.0L, 0.0L, 0.0L, 0.0L, 0.0L};
            std::size_t count = 0;
            for (std::size_t t = 0; t + tau < n; ++t) {
                if (binning::find_bin(grid, series.values[t]) !=
                    static_cast<int>(b))
                    continue;
                const double dx = series.values[t + tau] - series.values[t];
                long double p = 1.0L;
                for (int m = 1; m <= max_order; ++m) {
                    p *= dx;
                    sums[m - 1] += p;
                }
                ++count;
            }
            table.occupancy[b * n_lags + li] = count;
            if (count < min_occupancy) continue;
            for (std::size_t oi = 0; oi < n_orders; ++oi)
                table.K[(oi * n_bins + b) * n_lags + li] = static_cast<double>(
                    sums[table.orders[oi] - 1] /
                    static_cast<long double>(count));
        }
    }
    return table;
}

std::vector<double> moving_average(std::span<const double> x,
                                   std::size_t halfwidth) {
    const std::size_t n = x.size();
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t h = std::min({halfwidth, t, n - 1 - t});
        long double sum = 0.0L;
        for (std::size_t i = t - h; i <= t + h; ++i) sum += x[i];
        out[t] = static_cast<double>(sum / static_cast<long double>(2 * h + 1));
    }
    return out;
}

double conditional_entropy(std::span<const double> x, int tau, int n_bins) {
    if (tau < 1 || n_bins < 2)
        throw std::invalid_argument("ref::conditional_entropy: bad arguments");
    if (x.size() <= static_cast<std::size_t>(tau))
        throw std::runtime_error("ref::conditional_entropy: series too short");
    const std::size_t n_pairs = x.size() - static_cast<std::size_t>(tau);

    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo))
        throw std::runtime_error("ref::conditional_entropy: constant series");
    const double inv_width = static_cast<double>(n_bins) / (hi - lo);

    const auto bin_of = [&](double v) {
        const auto raw = static_cast<long>((v - lo) * inv_width);
        return std::clamp(raw, 0L, static_cast<long>(n_bins - 1));
    };

    std::map<std::pair<long, long>, std::int64_t> joint;
    std::map<long, std::int64_t> marginal;
    for (std::size_t t = 0; t < n_pairs; ++t) {
        const long i = bin_of(x[t]);
        ++joint[{i, bin_of(x[t + static_cast<std::size_t>(tau)])}];
        ++marginal[i];
    }

    const auto entropy = [total = static_cast<double>(n_pairs)](const auto& m) {
        double h = 0.0;
        for (const auto& [key, c] : m) {
            const double p = static_cast<double>(c) / total;
            h -= p * std::log(p);
        }
        return h;
    };
    return entropy(joint) - entropy(marginal);
}

} // namespace jdkm::ref

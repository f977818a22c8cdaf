// Timing comparison of the production kernels against the plain serial
// reference implementations, with an equality check so a speedup never
// comes from computing something different.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "jdkm/binning.hpp"
#include "jdkm/km.hpp"
#include "jdkm/markov.hpp"
#include "jdkm/preprocess.hpp"
#include "jdkm/reference.hpp"
#include "jdkm/simulate.hpp"

using namespace jdkm;

namespace {

template <typename F>
double time_seconds(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

bool same(double a, double b) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return a == b;
}

bool close(double a, double b, double rel) {
    if (std::isnan(a) && std::isnan(b)) return true;
    return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

void report(const char* name, double prod, double reference, bool equal) {
    std::printf("%-28s production %8.3fs   reference %8.3fs   x%5.1f   %s\n",
                name, prod, reference, reference / prod,
                equal ? "outputs match" : "OUTPUTS DIFFER");
}

} // namespace

int main() {
    simulate::SimConfig cfg;
    cfg.kind = simulate::SimKind::OU;
    cfg.dt = 0.01;
    cfg.n = 400000;
    cfg.seed = 17;
    const TimeSeries series = simulate::run(cfg);
    std::printf("series: OU, n = %zu\n\n", series.values.size());

    int failures = 0;

    // conditional moments (on a shorter series: the reference rescans the
    // whole series once per bin, which is quadratic-ish and would dominate
    // the benchmark's runtime at full length)
    {
        simulate::SimConfig short_cfg = cfg;
        short_cfg.n = 60000;
        const TimeSeries sub = simulate::run(short_cfg);
        const binning::BinGrid grid = binning::adaptive_bins(sub.values);
        const std::vector<int> orders = {1, 2, 3, 4, 5, 6};
        const std::vector<int> lags = {1, 2, 3, 4, 5, 6};
        km::MomentTable prod_table, ref_table;
        const double tp = time_seconds([&] {
            prod_table = km::raw_conditional_moments(sub, grid, orders, lags);
        });
        const double tr = time_seconds([&] {
            ref_table = ref::raw_conditional_moments(sub, grid, orders, lags);
        });
        bool equal = prod_table.K.size() == ref_table.K.size() &&
                     prod_table.occupancy == ref_table.occupancy;
        if (equal)
            for (std::size_t i = 0; i < prod_table.K.size(); ++i)
                if (!same(prod_table.K[i], ref_table.K[i])) {
                    equal = false;
                    break;
                }
        report("conditional moments", tp, tr, equal);
        if (!equal) ++failures;
    }

    // moving average
    {
        const int window_days = 21;
        const std::size_t halfwidth =
            static_cast<std::size_t>(window_days * series.points_per_day) / 2;
        preprocess::DetrendResult prod_res;
        std::vector<double> ref_trend;
        const double tp = time_seconds([&] {
            prod_res = preprocess::moving_average_detrend(series, window_days);
        });
        const double tr = time_seconds(
            [&] { ref_trend = ref::moving_average(series.values, halfwidth); });
        // prefix-sum vs naive-window arithmetic: equal to rounding, not bitwise
        bool equal = prod_res.trend.values.size() == ref_trend.size();
        if (equal)
            for (std::size_t i = 0; i < ref_trend.size(); ++i)
                if (!close(prod_res.trend.values[i], ref_trend[i], 1e-12)) {
                    equal = false;
                    break;
                }
        report("moving average", tp, tr, equal);
        if (!equal) ++failures;
    }

    // conditional entropy
    {
        double prod_h = 0.0, ref_h = 0.0;
        const double tp = time_seconds([&] {
            for (int tau = 1; tau <= 20; ++tau)
                prod_h += markov::conditional_entropy(series.values, tau, 30);
        });
        const double tr = time_seconds([&] {
            for (int tau = 1; tau <= 20; ++tau)
                ref_h += ref::conditional_entropy(series.values, tau, 30);
        });
        const bool equal = same(prod_h, ref_h);
        report("conditional entropy x20", tp, tr, equal);
        if (!equal) ++failures;
    }

    return failures == 0 ? 0 : 1;
}

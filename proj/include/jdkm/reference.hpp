#pragma once

// Deliberately plain serial implementations of the parallelized kernels.
// They use a different algorithmic arrangement than the production code
// (per-bin rescans, naive windows, map-based histograms) and exist so tests
// and the benchmark can compare the fast paths against something simple.

#include <span>

#include "jdkm/binning.hpp"
#include "jdkm/km.hpp"
#include "jdkm/series.hpp"

namespace jdkm::ref {

[[nodiscard]] km::MomentTable raw_conditional_moments(
    const TimeSeries& series, const binning::BinGrid& grid,
    std::span<const int> orders, std::span<const int> lags,
    std::size_t min_occupancy = 50);

[[nodiscard]] std::vector<double> moving_average(std::span<const double> x,
                                                 std::size_t halfwidth);

[[nodiscard]] double conditional_entropy(std::span<const double> x, int tau,
                                         int n_bins);

} // namespace jdkm::ref

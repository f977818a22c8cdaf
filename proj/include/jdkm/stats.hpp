#pragma once

// Small descriptive-statistics helpers shared across modules.

#include <span>

namespace jdkm::stats {

[[nodiscard]] double mean(std::span<const double> x);

// Unbiased (n-1) sample variance.
[[nodiscard]] double variance(std::span<const double> x);

[[nodiscard]] double stddev(std::span<const double> x);

// Adjusted Fisher-Pearson sample skewness g1 = m3 / m2^(3/2).
[[nodiscard]] double skewness(std::span<const double> x);

// Linear-interpolation quantile (the common "type 7" definition), q in [0, 1].
[[nodiscard]] double quantile(std::span<const double> sorted_x, double q);

// Interquartile range; sorts an internal copy, input order is free.
[[nodiscard]] double iqr(std::span<const double> x);

} // namespace jdkm::stats

#pragma once

// Scalar special functions used by the fitters and test statistics.

namespace jdkm::special {

// Digamma psi(x) for x > 0, by upward recurrence into the asymptotic range
// followed by the standard asymptotic series.
[[nodiscard]] double digamma(double x);

// Trigamma psi'(x) for x > 0, same recurrence + series scheme.
[[nodiscard]] double trigamma(double x);

// Standard normal CDF.
[[nodiscard]] double norm_cdf(double x) noexcept;

// Standard normal quantile. Rational initial guess refined by one Halley
// step against erfc, accurate to close to machine precision on (0, 1).
[[nodiscard]] double norm_quantile(double p);

} // namespace jdkm::special

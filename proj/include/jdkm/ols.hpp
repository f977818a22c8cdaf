#pragma once

// Ordinary least squares on small dense design matrices, with coefficient
// standard errors. Used by the unit-root regression, the intraday cubic
// fit, and the per-bin finite-lag regressions.

#include <span>
#include <vector>

namespace jdkm::ols {

struct Fit {
    std::vector<double> coef;     // one per regressor column
    std::vector<double> se;       // coefficient standard errors
    double r2 = 0.0;              // centered R^2 (1.0 for exact fits)
    double rss = 0.0;             // residual sum of squares
    long dof = 0;                 // n - k
    bool exact = false;           // rss below the exact-fit floor
};

// Residual floor below which a fit is treated as exact: R^2 := 1 and all
// standard errors := 0.
inline constexpr double kExactFitRss = 1e-30;

// Fit y on the given regressor columns (no implicit intercept; pass a
// column of ones if one is wanted). Throws std::invalid_argument on shape
// mismatch distally or a singular normal-equations system.
[[nodiscard]] Fit fit(std::span<const double> y,
                      const std::vector<std::vector<double>>& columns);

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double se_intercept = 0.0;
    double r2 = 0.0;
    bool exact = false;
};

// Straight-line convenience wrapper: y = intercept + slope * x.
[[nodiscard]] LineFit fit_line(std::span<const double> x,
                               std::span<const double> y);

} // namespace jdkm::ols

#include "jdkm/ols.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace jdkm::ols {

namespace {

// Solve A * X = B in place for the p x p system via Gauss-Jordan with
// partial pivoting; B holds p right-hand sides (used for the inverse).
void solve_inplace(std::vector<std::vector<double>>& a,
                   std::vector<std::vector<double>>& b) {
    const std::size_t p = a.size();
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < p; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) < 1e-300)
            throw std::runtime_error("ols: singular design matrix");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        const double inv = 1.0 / a[col][col];
        for (std::size_t j = 0; j < p; ++j) a[col][j] *= inv;
        for (std::size_t j = 0; j < b[col].size(); ++j) b[col][j] *= inv;
        for (std::size_t r = 0; r < p; ++r) {
            if (r == col) continue;
            const double f = a[r][col];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < p; ++j) a[r][j] -= f * a[col][j];
            for (std::size_t j = 0; j < b[r].size(); ++j) b[r][j] -= f * b[col][j];
        }
    }
}

} // namespace

Fit fit(std::span<const double> y, const std::vector<std::vector<double>>& columns) {
    const std::size_t n = y.size();
    const std::size_t p = columns.size();
    if (p == 0) throw std::invalid_argument("ols::fit: no regressors");
    for (const auto& c : columns)
        if (c.size() != n)
            throw std::invalid_argument("ols::fit: column length mismatch");
    if (n < p) throw std::invalid_argument("ols::fit: fewer rows than regressors");

    // Normal equations X'X beta = X'y.
    std::vector<std::vector<double>> xtx(p, std::vector<double>(p, 0.0));
    std::vector<double> xty(p, 0.0);
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = i; j < p; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += columns[i][k] * columns[j][k];
            xtx[i][j] = s;
            xtx[j][i] = s;
        }
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += columns[i][k] * y[k];
        xty[i] = s;
    }

    // Invert X'X so both the coefficients and their standard errors fall out.
    std::vector<std::vector<double>> a = xtx;
    std::vector<std::vector<double>> inv(p, std::vector<double>(p, 0.0));
    for (std::size_t i = 0; i < p; ++i) inv[i][i] = 1.0;
    solve_inplace(a, inv);

    Fit out;
    out.coef.assign(p, 0.0);
    for (std::size_t i = 0; i < p; ++i)
        for (std::size_t j = 0; j < p; ++j) out.coef[i] += inv[i][j] * xty[j];

    double rss = 0.0;
    double ybar = 0.0;
    for (std::size_t k = 0; k < n; ++k) ybar += y[k];
    ybar /= static_cast<double>(n);
    double tss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double pred = 0.0;
        for (std::size_t i = 0; i < p; ++i) pred += out.coef[i] * columns[i][k];
        const double r = y[k] - pred;
        rss += r * r;
        const double d = y[k] - ybar;
        tss += d * d;
    }
    out.rss = rss;
    out.dof = static_cast<int>(n) - static_cast<int>(p);
    out.exact = rss < kExactFitRss;

    out.se.assign(p, 0.0);
    if (out.exact || out.dof <= 0) {
        // An interpolating fit carries no residual scale, so the usual
        // error estimate degenerates; report certainty instead of noise.
        out.r2 = 1.0;
    } else {
        const double sigma2 = rss / static_cast<double>(out.dof);
        for (std::size_t i = 0; i < p; ++i) out.se[i] = std::sqrt(sigma2 * inv[i][i]);
        out.r2 = (tss > 0.0) ? 1.0 - rss / tss : 0.0;
    }
    if (out.exact) out.r2 = 1.0;
    return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (y.size() != n) throw std::invalid_argument("ols::fit_line: length mismatch");
    if (n < 2) throw std::invalid_argument("ols::fit_line: need at least 2 points");

    double xbar = 0.0;
    double ybar = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        xbar += x[k];
        ybar += y[k];
    }
    xbar /= static_cast<double>(n);
    ybar /= static_cast<double>(n);

    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dx = x[k] - xbar;
        sxx += dx * dx;
        sxy += dx * (y[k] - ybar);
    }
    if (sxx <= 0.0) throw std::invalid_argument("ols::fit_line: degenerate abscissae");

    LineFit out;
    out.slope = sxy / sxx;
    out.intercept = ybar - out.slope * xbar;

    double rss = 0.0;
    double tss = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double r = y[k] - (out.intercept + out.slope * x[k]);
        rss += r * r;
        const double d = y[k] - ybar;
        tss += d * d;
    }
    out.exact = rss < kExactFitRss;
    if (out.exact || n == 2) {
        out.se_intercept = 0.0;
        out.r2 = 1.0;
    } else {
        const double sigma2 = rss / static_cast<double>(n - 2);
        out.se_intercept =
            std::sqrt(sigma2 * (1.0 / static_cast<double>(n) + xbar * xbar / sxx));
        out.r2 = (tss > 0.0) ? 1.0 - rss / tss : 0.0;
    }
    return out;
}

} // namespace jdkm::ols

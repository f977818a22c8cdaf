#include "jdkm/dist_fit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "jdkm/rng.hpp"
#include "jdkm/special.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jdkm::dist_fit {

std::string family_name(DistFamily family) {
    switch (family) {
        case DistFamily::Gamma: return "gamma";
        case DistFamily::InvGamma: return "invgamma";
        case DistFamily::Weibull: return "weibull";
        case DistFamily::LogNormal: return "lognormal";
    }
    throw std::invalid_argument("family_name: unknown family");
}

DistFamily family_from_name(const std::string& name) {
    if (name == "gamma") return DistFamily::Gamma;
    if (name == "invgamma") return DistFamily::InvGamma;
    if (name == "weibull") return DistFamily::Weibull;
    if (name == "lognormal") return DistFamily::LogNormal;
    throw std::invalid_argument("family_from_name: unknown family '" + name + "'");
}

namespace {

void check_domain(DistFamily family, double phi, double theta) {
    if (!(theta > 0.0))
        throw std::domain_error("pdf: theta must be positive");
    if (family != DistFamily::LogNormal && !(phi > 0.0))
        throw std::domain_error("pdf: phi must be positive for this family");
}

double log_pdf(DistFamily family, double x, double phi, double theta) {
    switch (family) {
        case DistFamily::Gamma:
            return (phi - 1.0) * std::log(x) - x / theta - std::lgamma(phi) -
                   phi * std::log(theta);
        case DistFamily::InvGamma:
            return phi * std::log(theta) - std::lgamma(phi) -
                   (phi + 1.0) * std::log(x) - theta / x;
        case DistFamily::Weibull: {
            const double z = x / theta;
            return std::log(phi) - std::log(theta) +
                   (phi - 1.0) * std::log(z) - std::pow(z, phi);
        }
        case DistFamily::LogNormal: {
            const double d = (std::log(x) - phi) / theta;
            return -std::log(x) - std::log(theta) - 0.5 * std::log(2.0 * M_PI) -
                   0.5 * d * d;
        }
    }
    throw std::invalid_argument("log_pdf: unknown family");
}

void check_samples(std::span<const double> x) {
    if (x.size() < 2)
        throw std::invalid_argument("fit_mle: need at least 2 samples");
    for (double v : x)
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::domain_error("fit_mle: samples must be positive and finite");
    const double first = x.front();
    bool varied = false;
    for (double v : x)
        if (v != first) {
            varied = true;
            break;
        }
    if (!varied)
        throw std::invalid_argument("fit_mle: degenerate data (all samples equal)");
}

ParamEstimate finish(DistFamily family, double phi, double theta,
                     std::span<const double> x, bool converged) {
    ParamEstimate est;
    est.family = family;
    est.phi = phi;
    est.theta = theta;
    est.n_samples = x.size();
    est.converged = converged;
    double ll = 0.0;
    for (double v : x) ll += log_pdf(family, v, phi, theta);
    est.log_likelihood = ll;
    return est;
}

// Gamma shape equation: log(phi) - psi(phi) = s, Newton steps on log(phi)
// so the iterate can never leave the positive half-line.
ParamEstimate fit_gamma(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double mean = 0.0;
    double mean_log = 0.0;
    for (double v : x) {
        mean += v;
        mean_log += std::log(v);
    }
    mean /= n;
    mean_log /= n;
    const double s = std::log(mean) - mean_log;
    if (!(s > 0.0))
        throw std::invalid_argument("fit_mle: degenerate data (zero log-spread)");

    double phi = (3.0 - s + std::sqrt((s - 3.0) * (s - 3.0) + 24.0 * s)) / (12.0 * s);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        const double g = std::log(phi) - special::digamma(phi) - s;
        const double dg_dlog = 1.0 - phi * special::trigamma(phi);
        double step = g / dg_dlog;
        // Guard the Newton step so a wild derivative cannot overshoot.
        step = std::clamp(step, -2.0, 2.0);
        const double next = phi * std::exp(-step);
        const double rel = std::fabs(next - phi) / phi;
        phi = next;
        if (rel < 1e-10) {
            converged = true;
            break;
        }
    }
    return finish(DistFamily::Gamma, phi, mean / phi, x, converged);
}

ParamEstimate fit_inv_gamma(std::span<const double> x) {
    // A reciprocal Inverse-Gamma variate is Gamma with rate theta, i.e.
    // Gamma scale 1/theta, so one solver serves both families.
    std::vector<double> recip(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) recip[i] = 1.0 / x[i];
    const ParamEstimate g = fit_gamma(recip);
    return finish(DistFamily::InvGamma, g.phi, 1.0 / g.theta, x, g.converged);
}

ParamEstimate fit_weibull(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double mean_log = 0.0;
    double xmax = 0.0;
    for (double v : x) {
        mean_log += std::log(v);
        xmax = std::max(xmax, v);
    }
    mean_log /= n;
    double var_log = 0.0;
    for (double v : x) {
        const double d = std::log(v) - mean_log;
        var_log += d * d;
    }
    var_log /= n;
    if (!(var_log > 0.0))
        throw std::invalid_argument("fit_mle: degenerate data (zero log-spread)");

    // Method-of-moments start from the Gumbel variance of log-samples.
    double k = (M_PI / std::sqrt(6.0)) / std::sqrt(var_log);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        // Profile equation g(k) = S1/S0 - 1/k - mean_log with powers scaled
        // by xmax^k to avoid overflow; the m^k factors cancel in the ratio.
        double s0 = 0.0;
        double s1 = 0.0;
        double s2 = 0.0;
        for (double v : x) {
            const double w = std::pow(v / xmax, k);
            const double lv = std::log(v);
            s0 += w;
            s1 += w * lv;
            s2 += w * lv * lv;
        }
        const double g = s1 / s0 - 1.0 / k - mean_log;
        const double dg = (s2 * s0 - s1 * s1) / (s0 * s0) + 1.0 / (k * k);
        double next = k - g / dg;
        if (!(next > 0.0)) next = 0.5 * k;
        const double rel = std::fabs(next - k) / k;
        k = next;
        if (rel < 1e-10) {
            converged = true;
            break;
        }
    }
    double s0 = 0.0;
    for (double v : x) s0 += std::pow(v / xmax, k);
    const double theta = xmax * std::pow(s0 / n, 1.0 / k);
    return finish(DistFamily::Weibull, k, theta, x, converged);
}

ParamEstimate fit_log_normal(std::span<const double> x) {
    const double n = static_cast<double>(x.size());
    double mu = 0.0;
    for (double v : x) mu += std::log(v);
    mu /= n;
    double var = 0.0;
    for (double v : x) {
        const double d = std::log(v) - mu;
        var += d * d;
    }
    var /= n; // maximum-likelihood (population) variance
    if (!(var > 0.0))
        throw std::invalid_argument("fit_mle: degenerate data (zero log-spread)");
    return finish(DistFamily::LogNormal, mu, std::sqrt(var), x, true);
}

double gamma_draw(rng::Stream& stream, double shape) {
    // Marsaglia-Tsang squeeze; shapes below 1 are boosted through the
    // Gamma(shape+1) * U^{1/shape} identity.
    if (shape < 1.0) {
        const double u = stream.uniform();
        return gamma_draw(stream, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double z = stream.normal();
        const double t = 1.0 + c * z;
        if (t <= 0.0) continue;
        const double v = t * t * t;
        const double u = stream.uniform();
        if (std::log(u) < 0.5 * z * z + d - d * v + d * std::log(v)) return d * v;
    }
}

} // namespace

double pdf(DistFamily family, double x, double phi, double theta) {
    check_domain(family, phi, theta);
    if (!(x > 0.0)) throw std::domain_error("pdf: x must be positive");
    return std::exp(log_pdf(family, x, phi, theta));
}

ParamEstimate fit_mle(DistFamily family, std::span<const double> x) {
    check_samples(x);
    switch (family) {
        case DistFamily::Gamma: return fit_gamma(x);
        case DistFamily::InvGamma: return fit_inv_gamma(x);
        case DistFamily::Weibull: return fit_weibull(x);
        case DistFamily::LogNormal: return fit_log_normal(x);
    }
    throw std::invalid_argument("fit_mle: unknown family");
}

ParamSeries fit_cross_section(const std::vector<std::vector<double>>& panel,
                              DistFamily family, int points_per_day) {
    const std::size_t rows = panel.size();
    if (rows == 0) throw std::invalid_argument("fit_cross_section: empty panel");
    if (points_per_day < 1)
        throw std::invalid_argument("fit_cross_section: points_per_day must be >= 1");
    if (rows % static_cast<std::size_t>(points_per_day) != 0)
        throw std::invalid_argument(
            "fit_cross_section: row count must be a multiple of points_per_day");

    ParamSeries out;
    out.family = family;
    out.phi.assign(rows, 0.0);
    out.theta.assign(rows, 0.0);
    out.row_converged.assign(rows, 0);
    out.points_per_day = points_per_day;
    out.n_days = rows / static_cast<std::size_t>(points_per_day);

    // Rows are independent fits; failures are collected and rethrown after
    // the loop because exceptions must not cross a parallel region.
    std::vector<std::string> errors(rows);
    bool any_error = false;

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(rows); ++r) {
        const auto i = static_cast<std::size_t>(r);
        std::vector<double> usable;
        usable.reserve(panel[i].size());
        for (double v : panel[i])
            if (std::isfinite(v)) usable.push_back(v);
        try {
            if (usable.size() < 2)
                throw std::invalid_argument("row has fewer than 2 usable entries");
            const ParamEstimate est = fit_mle(family, usable);
            out.phi[i] = est.phi;
            out.theta[i] = est.theta;
            out.row_converged[i] = est.converged ? 1 : 0;
        } catch (const std::exception& e) {
            errors[i] = e.what();
#ifdef _OPENMP
#pragma omp atomic write
#endif
            any_error = true;
        }
    }
    if (any_error) {
        for (std::size_t i = 0; i < rows; ++i)
            if (!errors[i].empty())
                throw std::invalid_argument("fit_cross_section: row " +
                                            std::to_string(i) + ": " + errors[i]);
    }

    // Replace non-converged rows by linear interpolation between the nearest
    // converged neighbours; boundary gaps copy the nearest converged row.
    std::vector<std::size_t> good;
    for (std::size_t i = 0; i < rows; ++i)
        if (out.row_converged[i]) good.push_back(i);
    if (good.empty() || good.size() == rows) return out;

    for (std::size_t i = 0; i < rows; ++i) {
        if (out.row_converged[i]) continue;
        const auto it = std::lower_bound(good.begin(), good.end(), i);
        if (it == good.begin()) {
            out.phi[i] = out.phi[good.front()];
            out.theta[i] = out.theta[good.front()];
        } else if (it == good.end()) {
            out.phi[i] = out.phi[good.back()];
            out.theta[i] = out.theta[good.back()];
        } else {
            const std::size_t hi = *it;
            const std::size_t lo = *(it - 1);
            const double w = static_cast<double>(i - lo) /
                             static_cast<double>(hi - lo);
            out.phi[i] = (1.0 - w) * out.phi[lo] + w * out.phi[hi];
            out.theta[i] = (1.0 - w) * out.theta[lo] + w * out.theta[hi];
        }
    }
    return out;
}

std::vector<double> sample(DistFamily family, double phi, double theta,
                           std::size_t n, std::uint64_t seed) {
    check_domain(family, phi, theta);
    rng::Stream stream(seed, rng::Role::Sampler);
    std::vector<double> out(n);
    switch (family) {
        case DistFamily::Gamma:
            for (auto& v : out) v = theta * gamma_draw(stream, phi);
            break;
        case DistFamily::InvGamma:
            for (auto& v : out) v = theta / gamma_draw(stream, phi);
            break;
        case DistFamily::Weibull:
            for (auto& v : out)
                v = theta * std::pow(-std::log(stream.uniform()), 1.0 / phi);
            break;
        case DistFamily::LogNormal:
            for (auto& v : out) v = std::exp(phi + theta * stream.normal());
            break;
    }
    return out;
}

} // namespace jdkm::dist_fit

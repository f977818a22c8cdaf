#include "jdkm/simulate.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "jdkm/rng.hpp"

namespace jdkm::simulate {

std::string kind_name(SimKind kind) {
    switch (kind) {
        case SimKind::JumpDiffusion: return "jump_diffusion";
        case SimKind::OU: return "ou";
        case SimKind::AR1: return "ar1";
        case SimKind::RandomWalk: return "random_walk";
        case SimKind::WhiteNoise: return "white_noise";
        case SimKind::ProfilePlusNoise: return "profile_plus_noise";
    }
    throw std::invalid_argument("kind_name: unknown kind");
}

SimKind kind_from_name(const std::string& name) {
    if (name == "jump_diffusion") return SimKind::JumpDiffusion;
    if (name == "ou") return SimKind::OU;
    if (name == "ar1") return SimKind::AR1;
    if (name == "random_walk") return SimKind::RandomWalk;
    if (name == "white_noise") return SimKind::WhiteNoise;
    if (name == "profile_plus_noise") return SimKind::ProfilePlusNoise;
    throw std::invalid_argument("kind_from_name: unknown kind '" + name + "'");
}

void validate(const SimConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be positive");
    if (cfg.n < 2) throw std::invalid_argument("SimConfig: n must be >= 2");
    if (cfg.b < 0.0) throw std::invalid_argument("SimConfig: b must be nonnegative");
    if (cfg.lambda < 0.0)
        throw std::invalid_argument("SimConfig: lambda must be nonnegative");
    if (cfg.sigma_xi < 0.0)
        throw std::invalid_argument("SimConfig: sigma_xi must be nonnegative");
    if (cfg.lambda * cfg.dt >= 0.1)
        throw std::invalid_argument(
            "SimConfig: lambda*dt must stay below 0.1 so multi-jump steps are rare");
    if (cfg.points_per_day < 1)
        throw std::invalid_argument("SimConfig: points_per_day must be >= 1");
}

namespace {

double cubic_at(const std::array<double, 4>& c, double i) {
    return ((c[3] * i + c[2]) * i + c[1]) * i + c[0];
}

// Shared Euler-Maruyama core for the mean-reverting kinds. The three random
// streams are role-separated so the continuous path is unchanged when the
// jump channel is switched on or off, and vice versa.
TimeSeries run_jump_diffusion(const SimConfig& cfg) {
    rng::Stream wiener(static_cast<std::uint64_t>(cfg.seed), rng::Role::Wiener);
    rng::Stream counts(static_cast<std::uint64_t>(cfg.seed), rng::Role::PoissonCount);
    rng::Stream sizes(static_cast<std::uint64_t>(cfg.seed), rng::Role::JumpSize);

    const double sqdt = std::sqrt(cfg.dt);
    const double mu = cfg.lambda * cfg.dt;

    TimeSeries out;
    out.values.resize(cfg.n);
    out.values[0] = cfg.x0;
    double x = cfg.x0;
    for (std::size_t k = 0; k + 1 < cfg.n; ++k) {
        double step = -cfg.drift_theta * x * cfg.dt + cfg.b * sqdt * wiener.normal();
        const int m = (cfg.lambda > 0.0) ? counts.poisson(mu) : 0;
        for (int j = 0; j < m; ++j) step += cfg.sigma_xi * sizes.normal();
        x += step;
        out.values[k + 1] = x;
    }
    return out;
}

} // namespace

TimeSeries run(const SimConfig& cfg) {
    validate(cfg);

    TimeSeries out;
    switch (cfg.kind) {
        case SimKind::JumpDiffusion:
        case SimKind::OU: {
            SimConfig c = cfg;
            if (cfg.kind == SimKind::OU) {
                c.lambda = 0.0;
                c.sigma_xi = 0.0;
            }
            out = run_jump_diffusion(c);
            break;
        }
        case SimKind::AR1: {
            rng::Stream wiener(static_cast<std::uint64_t>(cfg.seed),
                               rng::Role::Wiener);
            out.values.resize(cfg.n);
            double x = cfg.x0;
            out.values[0] = x;
            for (std::size_t k = 0; k + 1 < cfg.n; ++k) {
                x = cfg.ar_coeff * x + cfg.b * wiener.normal();
                out.values[k + 1] = x;
            }
            break;
        }
        case SimKind::RandomWalk: {
            rng::Stream wiener(static_cast<std::uint64_t>(cfg.seed),
                               rng::Role::Wiener);
            out.values.resize(cfg.n);
            double x = cfg.x0;
            out.values[0] = x;
            for (std::size_t k = 0; k + 1 < cfg.n; ++k) {
                x += cfg.b * wiener.normal();
                out.values[k + 1] = x;
            }
            break;
        }
        case SimKind::WhiteNoise: {
            rng::Stream wiener(static_cast<std::uint64_t>(cfg.seed),
                               rng::Role::Wiener);
            out.values.resize(cfg.n);
            for (std::size_t k = 0; k < cfg.n; ++k)
                out.values[k] = cfg.x0 + cfg.b * wiener.normal();
            break;
        }
        case SimKind::ProfilePlusNoise: {
            // OU core plus a deterministic daily cubic in the intraday index.
            SimConfig c = cfg;
            c.lambda = 0.0;
            c.sigma_xi = 0.0;
            out = run_jump_diffusion(c);
            const auto ppd = static_cast<std::size_t>(cfg.points_per_day);
            for (std::size_t k = 0; k < cfg.n; ++k) {
                const double i = static_cast<double>(k % ppd);
                out.values[k] += cubic_at(cfg.profile_coeffs, i);
            }
            break;
        }
    }

    out.dt = cfg.dt;
    out.points_per_day = static_cast<int>(cfg.points_per_day);
    out.label = cfg.label.empty() ? kind_name(cfg.kind) : cfg.label;
    return out;
}

std::vector<JumpEvent> jump_log(const SimConfig& cfg) {
    validate(cfg);
    std::vector<JumpEvent> log;
    if (cfg.kind != SimKind::JumpDiffusion || cfg.lambda <= 0.0) return log;

    // Replays only the jump channel; role separation guarantees the counts
    // and sizes match the ones drawn inside run() for the same seed.
    rng::Stream counts(static_cast<std::uint64_t>(cfg.seed), rng::Role::PoissonCount);
    rng::Stream sizes(static_cast<std::uint64_t>(cfg.seed), rng::Role::JumpSize);
    const double mu = cfg.lambda * cfg.dt;
    for (std::size_t k = 0; k + 1 < cfg.n; ++k) {
        const int m = counts.poisson(mu);
        for (int j = 0; j < m; ++j)
            log.push_back(JumpEvent{k, cfg.sigma_xi * sizes.normal()});
    }
    return log;
}

} // namespace jdkm::simulate

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "jdkm/preprocess.hpp"
#include "jdkm/reference.hpp"
#include "jdkm/rng.hpp"
#include "jdkm/simulate.hpp"

using namespace jdkm;
using namespace jdkm::preprocess;

namespace {

TimeSeries make_noise(std::size_t n, int ppd, std::uint64_t seed) {
    simulate::SimConfig cfg;
    cfg.kind = simulate::SimKind::OU;
    cfg.n = n;
    cfg.points_per_day = ppd;
    cfg.seed = seed;
    return simulate::run(cfg);
}

} // namespace

TEST_CASE("moving-average trend matches the naive reference") {
    TimeSeries s = make_noise(38 * 60, 38, 3);
    const int window_days = 5;
    const DetrendResult res = moving_average_detrend(s, window_days);
    const int halfwidth = (window_days * 38) / 2;
    const std::vector<double> ref_trend = ref::moving_average(s.values, halfwidth);
    REQUIRE(res.trend.values.size() == s.values.size());
    for (std::size_t t = 0; t < s.values.size(); ++t) {
        CHECK(res.trend.values[t] ==
              doctest::Approx(ref_trend[t]).epsilon(1e-12));
        CHECK(res.fluct.values[t] ==
              doctest::Approx(s.values[t] - res.trend.values[t]).epsilon(1e-12));
    }
}

TEST_CASE("fluctuations are shift invariant") {
    TimeSeries s = make_noise(38 * 40, 38, 7);
    TimeSeries shifted = s;
    for (double& v : shifted.values) v += 1000.0;
    const DetrendResult a = moving_average_detrend(s, 3);
    const DetrendResult b = moving_average_detrend(shifted, 3);
    for (std::size_t t = 0; t < s.values.size(); ++t)
        CHECK(a.fluct.values[t] ==
              doctest::Approx(b.fluct.values[t]).epsilon(1e-9));
}

TEST_CASE("moving average of a constant series is the constant") {
    TimeSeries s;
    s.values.assign(200, 4.25);
    s.points_per_day = 10;
    const DetrendResult res = moving_average_detrend(s, 3);
    for (double v : res.trend.values) CHECK(v == doctest::Approx(4.25).epsilon(1e-15));
    for (double v : res.fluct.values) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("series shorter than one window is rejected") {
    TimeSeries s;
    s.values.assign(50, 1.0);
    s.points_per_day = 38; // window = 21 * 38 = 798 > 50
    CHECK_THROWS_AS((void)moving_average_detrend(s), std::invalid_argument);
}

TEST_CASE("intraday profile recovers a planted cubic exactly") {
    const int ppd = 19;
    const std::array<double, 4> coeffs = {2.0, -0.3, 0.05, -0.001};
    TimeSeries s;
    s.points_per_day = ppd;
    s.values.resize(static_cast<std::size_t>(ppd) * 50);
    for (std::size_t t = 0; t < s.values.size(); ++t) {
        const double i = static_cast<double>(t % ppd);
        s.values[t] = ((coeffs[3] * i + coeffs[2]) * i + coeffs[1]) * i + coeffs[0];
    }
    const IntradayProfile prof = intraday_profile(s);
    REQUIRE(prof.means.size() == static_cast<std::size_t>(ppd));
    for (int i = 0; i < ppd; ++i) {
        const double x = static_cast<double>(i);
        const double expected =
            ((coeffs[3] * x + coeffs[2]) * x + coeffs[1]) * x + coeffs[0];
        CHECK(prof.means[static_cast<std::size_t>(i)] ==
              doctest::Approx(expected).epsilon(1e-12));
    }
    for (int j = 0; j < 4; ++j)
        CHECK(prof.cubic_coeffs[static_cast<std::size_t>(j)] ==
              doctest::Approx(coeffs[static_cast<std::size_t>(j)]).epsilon(1e-8));

    const TimeSeries flat = remove_intraday(s, prof);
    for (double v : flat.values) CHECK(std::abs(v) < 1e-9);
}

TEST_CASE("profile of noisy cubic is recovered to sampling error") {
    simulate::SimConfig cfg;
    cfg.kind = simulate::SimKind::ProfilePlusNoise;
    cfg.profile_coeffs = {1.0, 0.4, -0.015, 0.0};
    cfg.points_per_day = 19;
    cfg.n = 19 * 6000;
    cfg.seed = 9;
    const TimeSeries s = simulate::run(cfg);
    const IntradayProfile prof = intraday_profile(s);
    for (int i = 0; i < 19; ++i) {
        const double x = static_cast<double>(i);
        const double expected = 1.0 + 0.4 * x - 0.015 * x * x;
        CHECK(prof.means[static_cast<std::size_t>(i)] ==
              doctest::Approx(expected).epsilon(0.15));
    }
}

TEST_CASE("intraday profile requires whole days") {
    TimeSeries s;
    s.values.assign(39, 1.0);
    s.points_per_day = 19;
    CHECK_THROWS_AS((void)intraday_profile(s), std::invalid_argument);
}

TEST_CASE("composite detrend runs in both orders and centers the series") {
    simulate::SimConfig cfg;
    cfg.kind = simulate::SimKind::ProfilePlusNoise;
    cfg.profile_coeffs = {5.0, 0.2, 0.0, 0.0};
    cfg.points_per_day = 19;
    cfg.n = 19 * 300;
    cfg.seed = 11;
    const TimeSeries s = simulate::run(cfg);

    for (DetrendOrder order :
         {DetrendOrder::IntradayFirst, DetrendOrder::MovingAverageFirst}) {
        const TimeSeries d = detrend(s, 5, order);
        REQUIRE(d.values.size() == s.values.size());
        double sum = 0.0;
        for (double v : d.values) sum += v;
        const double m = sum / static_cast<double>(d.values.size());
        CHECK(std::abs(m) < 0.05); // profile with mean ~6.8 stripped off
        CHECK(d.dt == s.dt);
        CHECK(d.points_per_day == s.points_per_day);
    }
}

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <unistd.h>
#include <vector>

#include "doctest.h"
#include "jdkm/dist_fit.hpp"
#include "jdkm/io.hpp"
#include "jdkm/pipeline.hpp"

using namespace jdkm;
using namespace jdkm::pipeline;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("jdkm_pipe_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::directory_iterator(dir))
        files[entry.path().filename().string()] = slurp(entry.path());
    return files;
}

PipelineConfig small_sim_config(const fs::path& out) {
    PipelineConfig c;
    c.input_kind = InputKind::Simulate;
    c.sim.kind = simulate::SimKind::OU;
    c.sim.drift_theta = 1.0;
    c.sim.b = 1.0;
    c.sim.dt = 0.01;
    c.sim.n = 38 * 100; // whole days
    c.sim.seed = 3;
    c.window_days = 5;
    c.out_dir = out.string();
    c.label = "ou_small";
    return c;
}

} // namespace

TEST_CASE("config serialization round-trips losslessly") {
    PipelineConfig c;
    c.input_kind = InputKind::Series;
    c.input_path = "/data/series.csv";
    c.dt = 0.0625;
    c.sim.kind = simulate::SimKind::JumpDiffusion;
    c.sim.drift_theta = 1.25;
    c.sim.b = 0.3;
    c.sim.lambda = 7.5;
    c.sim.sigma_xi = 0.1;
    c.sim.dt = 0.001;
    c.sim.n = 123456;
    c.sim.seed = 99;
    c.sim.x0 = -0.5;
    c.sim.ar_coeff = 0.95;
    c.sim.profile_coeffs = {0.1, -0.2, 0.3, -0.4};
    c.sim.points_per_day = 19;
    c.sim.label = "simlab";
    c.family = dist_fit::DistFamily::Weibull;
    c.parameter = Parameter::Theta;
    c.window_days = 11;
    c.points_per_day = 19;
    c.detrend_order = preprocess::DetrendOrder::MovingAverageFirst;
    c.zone_targets = binning::ZoneTargets::wide();
    c.lags = {1, 3, 5, 7};
    c.orders = {2, 4, 6};
    c.min_occupancy = 77;
    c.d4_floor = 1e-7;
    c.entropy_bins = 24;
    c.entropy_threshold = 0.01;
    c.tau_max = 15;
    c.pacf_max_lag = 12;
    c.adf_lags = 9;
    c.out_dir = "/tmp/somewhere";
    c.label = "case";
    c.seed = 42;

    const std::string text = serialize_config(c);
    const PipelineConfig back = parse_config(text);

    CHECK(back.input_kind == c.input_kind);
    CHECK(back.input_path == c.input_path);
    CHECK(back.dt == c.dt);
    CHECK(back.sim.kind == c.sim.kind);
    CHECK(back.sim.drift_theta == c.sim.drift_theta);
    CHECK(back.sim.b == c.sim.b);
    CHECK(back.sim.lambda == c.sim.lambda);
    CHECK(back.sim.sigma_xi == c.sim.sigma_xi);
    CHECK(back.sim.dt == c.sim.dt);
    CHECK(back.sim.n == c.sim.n);
    CHECK(back.sim.seed == c.sim.seed);
    CHECK(back.sim.x0 == c.sim.x0);
    CHECK(back.sim.ar_coeff == c.sim.ar_coeff);
    CHECK(back.sim.profile_coeffs == c.sim.profile_coeffs);
    CHECK(back.sim.points_per_day == c.sim.points_per_day);
    CHECK(back.sim.label == c.sim.label);
    CHECK(back.family == c.family);
    CHECK(back.parameter == c.parameter);
    CHECK(back.window_days == c.window_days);
    CHECK(back.points_per_day == c.points_per_day);
    CHECK(back.detrend_order == c.detrend_order);
    CHECK(back.zone_targets.core_min == c.zone_targets.core_min);
    CHECK(back.zone_targets.core_max == c.zone_targets.core_max);
    CHECK(back.zone_targets.shoulder_min == c.zone_targets.shoulder_min);
    CHECK(back.zone_targets.shoulder_max == c.zone_targets.shoulder_max);
    CHECK(back.zone_targets.tail_min == c.zone_targets.tail_min);
    CHECK(back.zone_targets.tail_max == c.zone_targets.tail_max);
    CHECK(back.lags == c.lags);
    CHECK(back.orders == c.orders);
    CHECK(back.min_occupancy == c.min_occupancy);
    CHECK(back.d4_floor == c.d4_floor);
    CHECK(back.entropy_bins == c.entropy_bins);
    CHECK(back.entropy_threshold == c.entropy_threshold);
    CHECK(back.tau_max == c.tau_max);
    CHECK(back.pacf_max_lag == c.pacf_max_lag);
    CHECK(back.adf_lags == c.adf_lags);
    CHECK(back.out_dir == c.out_dir);
    CHECK(back.label == c.label);
    CHECK(back.seed == c.seed);

    // serializing the parsed config reproduces the text byte for byte
    CHECK(serialize_config(back) == text);

    // auto lag selection survives too
    c.adf_lags.reset();
    CHECK(!parse_config(serialize_config(c)).adf_lags.has_value());
}

TEST_CASE("parse_config rejects unknown keys") {
    PipelineConfig c;
    std::string text = serialize_config(c);
    text += "\nnonsense_key = 5\n";
    CHECK_THROWS((void)parse_config(text));
}

TEST_CASE("simulated pipeline writes the full bundle, deterministically") {
    TempDir tmp("bundle");
    const PipelineConfig c = small_sim_config(tmp.path);

    const PipelineOutputs out = run_pipeline(c);
    const char* expected[] = {"detrended.csv", "stationarity.csv",
                              "markov.csv",    "bins.csv",
                              "moments_long.csv", "km.csv",
                              "jumps.csv",     "run_manifest.txt"};
    CHECK(out.files.size() == 8);
    for (const char* name : expected) CHECK(fs::exists(tmp.path / name));

    const auto first = snapshot(tmp.path);
    (void)run_pipeline(c);
    const auto second = snapshot(tmp.path);
    REQUIRE(first.size() == second.size());
    for (const auto& [name, bytes] : first) {
        INFO("file ", name);
        CHECK(second.at(name) == bytes);
    }
}

TEST_CASE("missing input file fails in the input stage and cleans up") {
    TempDir tmp("missing");
    PipelineConfig c;
    c.input_kind = InputKind::Series;
    c.input_path = (tmp.path / "does_not_exist.csv").string();
    c.out_dir = (tmp.path / "out").string();
    try {
        (void)run_pipeline(c);
        FAIL("expected PipelineError");
    } catch (const PipelineError& e) {
        CHECK(e.module() == "input");
    }
    // nothing but the (empty) directory is left behind
    std::size_t leftover = 0;
    if (fs::exists(tmp.path / "out"))
        for (const auto& entry : fs::directory_iterator(tmp.path / "out")) {
            (void)entry;
            ++leftover;
        }
    CHECK(leftover == 0);
}

TEST_CASE("stage failures carry the module name and clean up") {
    TempDir tmp("stagefail");
    PipelineConfig c = small_sim_config(tmp.path / "out");
    c.sim.n = 100; // shorter than one moving-average window: detrend fails
    try {
        (void)run_pipeline(c);
        FAIL("expected PipelineError");
    } catch (const PipelineError& e) {
        CHECK(e.module() == "preprocess");
    }
    std::size_t leftover = 0;
    for (const auto& entry : fs::directory_iterator(tmp.path / "out")) {
        (void)entry;
        ++leftover;
    }
    CHECK(leftover == 0);
}

TEST_CASE("panel input runs the cross-sectional fit first") {
    TempDir tmp("panel");
    // 22 days x 38 intraday points, 40 entities of gamma draws whose shape
    // wiggles with the row index
    const std::size_t rows = 22 * 38;
    std::vector<std::vector<double>> panel(rows);
    for (std::size_t t = 0; t < rows; ++t) {
        const double phi =
            2.0 + 0.5 * std::sin(static_cast<double>(t % 38) * 0.3);
        panel[t] = dist_fit::sample(dist_fit::DistFamily::Gamma, phi, 1.0, 40,
                                    1000 + t);
    }
    const fs::path panel_path = tmp.path / "panel.csv";
    io::write_panel_csv(panel_path, panel);

    PipelineConfig c;
    c.input_kind = InputKind::Panel;
    c.input_path = panel_path.string();
    c.family = dist_fit::DistFamily::Gamma;
    c.parameter = Parameter::Phi;
    c.dt = 1.0;
    c.points_per_day = 38;
    c.window_days = 3;
    c.out_dir = (tmp.path / "out").string();
    c.label = "panel_phi";
    // the fitted series is short (836 points): relax the grid demands
    c.zone_targets.core_min = 30;
    c.zone_targets.core_max = 90;
    c.zone_targets.shoulder_min = 20;
    c.zone_targets.shoulder_max = 70;
    c.zone_targets.tail_min = 10;
    c.zone_targets.tail_max = 60;
    c.min_occupancy = 10;
    c.entropy_bins = 8;

    const PipelineOutputs out = run_pipeline(c);
    CHECK(out.files.size() == 9); // bundle plus params.csv
    CHECK(fs::exists(tmp.path / "out" / "params.csv"));

    const io::Table params = io::read_table(tmp.path / "out" / "params.csv");
    CHECK(params.rows.size() == rows);
    const std::size_t conv_col = params.column("converged");
    for (const auto& row : params.rows) CHECK(row[conv_col] == "1");
}

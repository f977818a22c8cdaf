#include "jdkm/pipeline.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

#include "jdkm/io.hpp"
#include "jdkm/jumps.hpp"
#include "jdkm/stationarity.hpp"

namespace jdkm::pipeline {

namespace fs = std::filesystem;

PipelineError::PipelineError(std::string module, const std::string& message)
    : std::runtime_error(message), module_(std::move(module)) {}

namespace {

const char* input_kind_name(InputKind kind) {
    switch (kind) {
        case InputKind::Panel: return "panel";
        case InputKind::Series: return "series";
        case InputKind::Simulate: return "simulate";
    }
    throw std::invalid_argument("input_kind_name: unknown kind");
}

InputKind input_kind_from_name(const std::string& name) {
    if (name == "panel") return InputKind::Panel;
    if (name == "series") return InputKind::Series;
    if (name == "simulate") return InputKind::Simulate;
    throw std::invalid_argument("unknown input kind '" + name + "'");
}

const char* parameter_name(Parameter p) {
    return p == Parameter::Phi ? "phi" : "theta";
}

Parameter parameter_from_name(const std::string& name) {
    if (name == "phi") return Parameter::Phi;
    if (name == "theta") return Parameter::Theta;
    throw std::invalid_argument("unknown parameter '" + name + "'");
}

const char* order_name(preprocess::DetrendOrder order) {
    return order == preprocess::DetrendOrder::IntradayFirst
               ? "intraday_first"
               : "moving_average_first";
}

preprocess::DetrendOrder order_from_name(const std::string& name) {
    if (name == "intraday_first") return preprocess::DetrendOrder::IntradayFirst;
    if (name == "moving_average_first")
        return preprocess::DetrendOrder::MovingAverageFirst;
    throw std::invalid_argument("unknown detrend order '" + name + "'");
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(v[i]);
    }
    return out;
}

std::vector<int> split_ints(const std::string& s) {
    std::vector<int> out;
    std::istringstream in(s);
    std::string cell;
    while (std::getline(in, cell, ',')) {
        if (cell.empty()) continue;
        out.push_back(std::stoi(cell));
    }
    return out;
}

double parse_num(const std::string& value, const std::string& key) {
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0')
        throw std::invalid_argument("bad number for '" + key + "': " + value);
    return v;
}

long parse_int(const std::string& value, const std::string& key) {
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (errno != 0 || end == value.c_str() || *end != '\0')
        throw std::invalid_argument("bad integer for '" + key + "': " + value);
    return v;
}

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && (s[a] == ' ' || s[a] == '\t')) ++a;
    while (b > a && (s[b - 1] == ' ' || s[b - 1] == '\t' || s[b - 1] == '\r'))
        --b;
    return s.substr(a, b - a);
}

} // namespace

std::string serialize_config(const PipelineConfig& c) {
    using io::format17;
    std::ostringstream out;
    out << "[input]\n";
    out << "kind = " << input_kind_name(c.input_kind) << '\n';
    out << "path = " << c.input_path << '\n';
    out << "dt = " << format17(c.dt) << '\n';
    out << "label = " << c.label << '\n';
    out << "out_dir = " << c.out_dir << '\n';
    out << "seed = " << c.seed << '\n';

    out << "\n[simulate]\n";
    out << "kind = " << simulate::kind_name(c.sim.kind) << '\n';
    out << "drift_theta = " << format17(c.sim.drift_theta) << '\n';
    out << "b = " << format17(c.sim.b) << '\n';
    out << "lambda = " << format17(c.sim.lambda) << '\n';
    out << "sigma_xi = " << format17(c.sim.sigma_xi) << '\n';
    out << "dt = " << format17(c.sim.dt) << '\n';
    out << "n = " << c.sim.n << '\n';
    out << "seed = " << c.sim.seed << '\n';
    out << "x0 = " << format17(c.sim.x0) << '\n';
    out << "ar_coeff = " << format17(c.sim.ar_coeff) << '\n';
    out << "profile_coeffs = " << format17(c.sim.profile_coeffs[0]) << ','
        << format17(c.sim.profile_coeffs[1]) << ','
        << format17(c.sim.profile_coeffs[2]) << ','
        << format17(c.sim.profile_coeffs[3]) << '\n';
    out << "points_per_day = " << c.sim.points_per_day << '\n';
    out << "label = " << c.sim.label << '\n';

    out << "\n[fit]\n";
    out << "family = " << dist_fit::family_name(c.family) << '\n';
    out << "parameter = " << parameter_name(c.parameter) << '\n';

    out << "\n[detrend]\n";
    out << "window_days = " << c.window_days << '\n';
    out << "points_per_day = " << c.points_per_day << '\n';
    out << "order = " << order_name(c.detrend_order) << '\n';

    out << "\n[binning]\n";
    out << "core_min = " << c.zone_targets.core_min << '\n';
    out << "core_max = " << c.zone_targets.core_max << '\n';
    out << "shoulder_min = " << c.zone_targets.shoulder_min << '\n';
    out << "shoulder_max = " << c.zone_targets.shoulder_max << '\n';
    out << "tail_min = " << c.zone_targets.tail_min << '\n';
    out << "tail_max = " << c.zone_targets.tail_max << '\n';

    out << "\n[km]\n";
    out << "orders = " << join_ints(c.orders) << '\n';
    out << "lags = " << join_ints(c.lags) << '\n';
    out << "min_occupancy = " << c.min_occupancy << '\n';
    out << "d4_floor = " << format17(c.d4_floor) << '\n';

    out << "\n[markov]\n";
    out << "entropy_bins = " << c.entropy_bins << '\n';
    out << "entropy_threshold = " << format17(c.entropy_threshold) << '\n';
    out << "tau_max = " << c.tau_max << '\n';
    out << "pacf_max_lag = " << c.pacf_max_lag << '\n';

    out << "\n[stationarity]\n";
    out << "adf_lags = "
        << (c.adf_lags ? std::to_string(*c.adf_lags) : std::string("auto"))
        << '\n';
    return out.str();
}

PipelineConfig parse_config(const std::string& text) {
    PipelineConfig c;
    std::istringstream in(text);
    std::string line;
    std::string section;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("parse_config: bad section line '" +
                                            line + "'");
            section = line.substr(1, line.size() - 2);
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("parse_config: expected key = value in '" +
                                        line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string k = section + "." + key;

        if (k == "input.kind") c.input_kind = input_kind_from_name(value);
        else if (k == "input.path") c.input_path = value;
        else if (k == "input.dt") c.dt = parse_num(value, k);
        else if (k == "input.label") c.label = value;
        else if (k == "input.out_dir") c.out_dir = value;
        else if (k == "input.seed")
            c.seed = static_cast<std::uint64_t>(parse_int(value, k));
        else if (k == "simulate.kind") c.sim.kind = simulate::kind_from_name(value);
        else if (k == "simulate.drift_theta") c.sim.drift_theta = parse_num(value, k);
        else if (k == "simulate.b") c.sim.b = parse_num(value, k);
        else if (k == "simulate.lambda") c.sim.lambda = parse_num(value, k);
        else if (k == "simulate.sigma_xi") c.sim.sigma_xi = parse_num(value, k);
        else if (k == "simulate.dt") c.sim.dt = parse_num(value, k);
        else if (k == "simulate.n")
            c.sim.n = static_cast<std::size_t>(parse_int(value, k));
        else if (k == "simulate.seed")
            c.sim.seed = static_cast<std::uint64_t>(parse_int(value, k));
        else if (k == "simulate.x0") c.sim.x0 = parse_num(value, k);
        else if (k == "simulate.ar_coeff") c.sim.ar_coeff = parse_num(value, k);
        else if (k == "simulate.profile_coeffs") {
            std::istringstream cells(value);
            std::string cell;
            std::size_t i = 0;
            while (std::getline(cells, cell, ',')) {
                if (i >= 4)
                    throw std::invalid_argument(
                        "parse_config: profile_coeffs takes 4 values");
                c.sim.profile_coeffs[i++] = parse_num(trim(cell), k);
            }
            if (i != 4)
                throw std::invalid_argument(
                    "parse_config: profile_coeffs takes 4 values");
        } else if (k == "simulate.points_per_day")
            c.sim.points_per_day = static_cast<int>(parse_int(value, k));
        else if (k == "simulate.label") c.sim.label = value;
        else if (k == "fit.family") c.family = dist_fit::family_from_name(value);
        else if (k == "fit.parameter") c.parameter = parameter_from_name(value);
        else if (k == "detrend.window_days")
            c.window_days = static_cast<int>(parse_int(value, k));
        else if (k == "detrend.points_per_day")
            c.points_per_day = static_cast<int>(parse_int(value, k));
        else if (k == "detrend.order") c.detrend_order = order_from_name(value);
        else if (k == "binning.core_min")
            c.zone_targets.core_min = static_cast<std::size_t>(parse_int(value, k));
        else if (k == "binning.core_max")
            c.zone_targets.core_max = static_cast<std::size_t>(parse_int(value, k));
        else if (k == "binning.shoulder_min")
            c.zone_targets.shoulder_min =
                static_cast<std::size_t>(parse_int(value, k));
        else if (k == "binning.shoulder_max")
            c.zone_targets.shoulder_max =
                static_cast<std::size_t>(parse_int(value, k));
        else if (k == "binning.tail_min")
            c.zone_targets.tail_min = static_cast<std::size_t>(parse_int(value, k));
        else if (k == "binning.tail_max")
            c.zone_targets.tail_max = static_cast<std::size_t>(parse_int(value, k));
        else if (k == "km.orders") c.orders = split_ints(value);
        else if (k == "km.lags") c.lags = split_ints(value);
        else if (k == "km.min_occupancy")
            c.min_occupancy = static_cast<std::size_t>(parse_int(value, k));
        else if (k == "km.d4_floor") c.d4_floor = parse_num(value, k);
        else if (k == "markov.entropy_bins")
            c.entropy_bins = static_cast<int>(parse_int(value, k));
        else if (k == "markov.entropy_threshold")
            c.entropy_threshold = parse_num(value, k);
        else if (k == "markov.tau_max")
            c.tau_max = static_cast<int>(parse_int(value, k));
        else if (k == "markov.pacf_max_lag")
            c.pacf_max_lag = static_cast<int>(parse_int(value, k));
        else if (k == "stationarity.adf_lags") {
            if (value == "auto")
                c.adf_lags.reset();
            else
                c.adf_lags = static_cast<int>(parse_int(value, k));
        } else
            throw std::invalid_argument("parse_config: unknown key '" + k + "'");
    }
    return c;
}

PipelineOutputs run_pipeline(const PipelineConfig& config) {
    PipelineOutputs outputs;
    const fs::path dir(config.out_dir);

    // Every path is recorded before its write starts, so the cleanup below
    // also sweeps away a file that failed half-written.
    const auto cleanup = [&]() {
        for (const auto& f : outputs.files) {
            std::error_code ec;
            fs::remove(f, ec);
        }
    };
    const auto run_stage = [&](const char* module, auto&& fn) {
        try {
            return fn();
        } catch (const PipelineError&) {
            throw;
        } catch (const std::exception& e) {
            cleanup();
            throw PipelineError(module, e.what());
        }
    };

    run_stage("io", [&] {
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory '" +
                                     dir.string() + "': " + ec.message());
    });

    // --- input -----------------------------------------------------------
    TimeSeries series = run_stage("input", [&]() -> TimeSeries {
        switch (config.input_kind) {
            case InputKind::Simulate: {
                TimeSeries s = simulate::run(config.sim);
                s.label = config.label;
                return s;
            }
            case InputKind::Series: {
                TimeSeries s = io::read_series_csv(config.input_path, config.dt);
                s.points_per_day = config.points_per_day;
                s.label = config.label;
                return s;
            }
            case InputKind::Panel: {
                const auto panel = io::read_panel_csv(config.input_path);
                const dist_fit::ParamSeries params = dist_fit::fit_cross_section(
                    panel, config.family, config.points_per_day);
                const fs::path params_path = dir / "params.csv";
                outputs.files.push_back(params_path);
                io::write_params_csv(params_path, params);
                TimeSeries s;
                s.values = config.parameter == Parameter::Phi ? params.phi
                                                              : params.theta;
                s.dt = config.dt;
                s.points_per_day = config.points_per_day;
                s.label = config.label;
                return s;
            }
        }
        throw std::invalid_argument("unknown input kind");
    });

    // --- preprocess ------------------------------------------------------
    const TimeSeries fluct = run_stage("preprocess", [&] {
        TimeSeries f =
            preprocess::detrend(series, config.window_days, config.detrend_order);
        const fs::path path = dir / "detrended.csv";
        outputs.files.push_back(path);
        io::write_series_csv(path, f);
        return f;
    });

    // --- stationarity ----------------------------------------------------
    run_stage("stationarity", [&] {
        const auto report = stationarity::stationarity_report(fluct, config.adf_lags);
        const fs::path path = dir / "stationarity.csv";
        outputs.files.push_back(path);
        io::write_stationarity_csv(path, config.label, report);
    });

    // --- markov ----------------------------------------------------------
    run_stage("markov", [&] {
        markov::MarkovConfig mc;
        mc.n_bins = config.entropy_bins;
        mc.threshold = config.entropy_threshold;
        mc.tau_max = config.tau_max;
        mc.pacf_max_lag = config.pacf_max_lag;
        const auto report = markov::markov_report(fluct, mc);
        const fs::path path = dir / "markov.csv";
        outputs.files.push_back(path);
        io::write_markov_csv(path, report);
        int max_lag = 0;
        for (int lag : config.lags) max_lag = std::max(max_lag, lag);
        if (max_lag >= report.tau_m)
            std::fprintf(stderr,
                         "warning: largest regression lag %d reaches the "
                         "Markov time %d; finite-lag fits may mix regimes\n",
                         max_lag, report.tau_m);
    });

    // --- binning ---------------------------------------------------------
    const binning::BinGrid grid = run_stage("binning", [&] {
        binning::BinGrid g = binning::adaptive_bins(fluct.values, config.zone_targets);
        const fs::path path = dir / "bins.csv";
        outputs.files.push_back(path);
        io::write_bins_csv(path, g);
        return g;
    });

    // --- km --------------------------------------------------------------
    run_stage("km", [&] {
        km::KMOptions options;
        options.orders = config.orders;
        options.lags = config.lags;
        options.min_occupancy = config.min_occupancy;
        options.d4_floor = config.d4_floor;
        const km::MomentTable table = km::raw_conditional_moments(
            fluct, grid, options.orders, options.lags, options.min_occupancy);
        const fs::path moments_path = dir / "moments_long.csv";
        outputs.files.push_back(moments_path);
        io::write_moments_csv(moments_path, table);

        const km::KMResult result = km::km_analysis(fluct, grid, options);
        const fs::path km_path = dir / "km.csv";
        outputs.files.push_back(km_path);
        io::write_km_csv(km_path, result);
    });

    // --- jumps -----------------------------------------------------------
    run_stage("jumps", [&] {
        const jumps::GlobalMoments moments =
            jumps::global_infinitesimal_moments(fluct, config.lags, fluct.dt);
        const jumps::SafeInversion inv = jumps::invert_or_diffusion(moments);
        const fs::path path = dir / "jumps.csv";
        outputs.files.push_back(path);
        io::write_jumps_csv(path, config.label, inv.params, inv.decomp);
        if (!inv.inverted)
            std::fprintf(stderr,
                         "note: even moments are nonpositive (M4=%.6g, "
                         "M6=%.6g); reporting a pure-diffusion decomposition\n",
                         moments.M4, moments.M6);
        if (inv.params.negative_b2)
            std::fprintf(stderr,
                         "warning: inverted continuous amplitude b^2 is "
                         "negative (%.6g); jump moments exceed the total\n",
                         inv.params.b2);
    });

    // --- manifest --------------------------------------------------------
    run_stage("io", [&] {
        const fs::path path = dir / "run_manifest.txt";
        outputs.files.push_back(path);
        std::ofstream out(path);
        if (!out.is_open())
            throw std::runtime_error("cannot open '" + path.string() + "'");
        out << serialize_config(config);
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + path.string());
    });

    return outputs;
}

} // namespace jdkm::pipeline

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "CLI11.hpp"

#include "jdkm/binning.hpp"
#include "jdkm/dist_fit.hpp"
#include "jdkm/io.hpp"
#include "jdkm/jumps.hpp"
#include "jdkm/km.hpp"
#include "jdkm/markov.hpp"
#include "jdkm/pipeline.hpp"
#include "jdkm/preprocess.hpp"
#include "jdkm/simulate.hpp"
#include "jdkm/stationarity.hpp"
#include "jdkm/version.hpp"

namespace {

using namespace jdkm;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in.is_open())
        throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

pipeline::Parameter parameter_from_name(const std::string& name) {
    if (name == "phi") return pipeline::Parameter::Phi;
    if (name == "theta") return pipeline::Parameter::Theta;
    throw std::invalid_argument("unknown parameter '" + name +
                                "' (expected phi or theta)");
}

preprocess::DetrendOrder order_from_name(const std::string& name) {
    if (name == "intraday_first") return preprocess::DetrendOrder::IntradayFirst;
    if (name == "moving_average_first")
        return preprocess::DetrendOrder::MovingAverageFirst;
    throw std::invalid_argument("unknown detrend order '" + name + "'");
}

std::optional<int> adf_lags_from_string(const std::string& s) {
    if (s == "auto") return std::nullopt;
    return std::stoi(s);
}

binning::BinRule rule_from_name(const std::string& name) {
    if (name == "sturges") return binning::BinRule::Sturges;
    if (name == "scott") return binning::BinRule::Scott;
    if (name == "fd") return binning::BinRule::FreedmanDiaconis;
    if (name == "doane") return binning::BinRule::Doane;
    throw std::invalid_argument("unknown bin rule '" + name + "'");
}

void write_kde_csv(const std::string& path, const binning::KdeResult& kde) {
    std::ofstream out(path);
    if (!out.is_open()) throw io::CsvError(path, 0, "cannot open for writing");
    out << "x,density\n";
    for (std::size_t i = 0; i < kde.grid.size(); ++i)
        out << io::format17(kde.grid[i]) << ',' << io::format17(kde.density[i])
            << '\n';
    out.flush();
    if (!out) throw io::CsvError(path, 0, "write failed");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Jump-diffusion dynamics reconstruction toolkit"};
    app.set_version_flag("--version", std::string(jdkm::kVersion));
    app.require_subcommand(1);

    const char* env_out = std::getenv("JDKM_OUT_DIR");
    const std::string default_out_dir = env_out ? env_out : "out";

    // ---- simulate ---------------------------------------------------------
    auto* c_sim = app.add_subcommand("simulate", "Generate a seeded series");
    simulate::SimConfig sim_cfg;
    std::string sim_kind = "ou";
    std::vector<double> sim_coeffs;
    std::string sim_out = "series.csv";
    std::string sim_jump_log;
    c_sim->add_option("--kind", sim_kind,
                      "jump_diffusion|ou|ar1|random_walk|white_noise|"
                      "profile_plus_noise");
    c_sim->add_option("--drift_theta", sim_cfg.drift_theta, "mean-reversion rate");
    c_sim->add_option("--b", sim_cfg.b, "diffusion amplitude");
    c_sim->add_option("--lambda", sim_cfg.lambda, "jump intensity per unit time");
    c_sim->add_option("--sigma_xi", sim_cfg.sigma_xi, "jump amplitude s.d.");
    c_sim->add_option("--dt", sim_cfg.dt, "sampling interval");
    c_sim->add_option("--n", sim_cfg.n, "number of samples");
    c_sim->add_option("--seed", sim_cfg.seed, "RNG seed");
    c_sim->add_option("--x0", sim_cfg.x0, "initial value");
    c_sim->add_option("--ar_coeff", sim_cfg.ar_coeff, "AR(1) coefficient");
    c_sim->add_option("--profile_coeffs", sim_coeffs, "cubic a0,a1,a2,a3")
        ->delimiter(',');
    c_sim->add_option("--points_per_day", sim_cfg.points_per_day,
                      "intraday grid length");
    c_sim->add_option("--label", sim_cfg.label, "series label");
    c_sim->add_option("--out", sim_out, "output series CSV");
    c_sim->add_option("--jump_log", sim_jump_log, "also write the jump log CSV");

    // ---- fit --------------------------------------------------------------
    auto* c_fit = app.add_subcommand("fit", "Fit a distribution per panel row");
    std::string fit_input;
    std::string fit_family = "gamma";
    int fit_ppd = 1;
    std::string fit_out = "params.csv";
    c_fit->add_option("--input", fit_input, "panel CSV (t,e0,e1,...)")->required();
    c_fit->add_option("--family", fit_family, "gamma|inv_gamma|weibull|log_normal");
    c_fit->add_option("--points_per_day", fit_ppd, "rows per day");
    c_fit->add_option("--out", fit_out, "output parameter CSV");

    // ---- detrend ----------------------------------------------------------
    auto* c_det = app.add_subcommand("detrend", "Remove intraday profile and trend");
    std::string det_input;
    double det_dt = 1.0;
    int det_window = 21;
    int det_ppd = 0;
    std::string det_order = "intraday_first";
    std::string det_out = "detrended.csv";
    c_det->add_option("--input", det_input, "series CSV")->required();
    c_det->add_option("--dt", det_dt, "sampling interval");
    c_det->add_option("--window_days", det_window, "moving-average window");
    c_det->add_option("--points_per_day", det_ppd,
                      "override the intraday grid length (0: infer)");
    c_det->add_option("--detrend_order", det_order,
                      "intraday_first|moving_average_first");
    c_det->add_option("--out", det_out, "output series CSV");

    // ---- stationarity -----------------------------------------------------
    auto* c_sta = app.add_subcommand("stationarity", "ADF and KPSS tests");
    std::string sta_input;
    double sta_dt = 1.0;
    std::string sta_adf_lags = "auto";
    std::string sta_label;
    std::string sta_out = "stationarity.csv";
    c_sta->add_option("--input", sta_input, "series CSV")->required();
    c_sta->add_option("--dt", sta_dt, "sampling interval");
    c_sta->add_option("--adf_lags", sta_adf_lags, "auto or a lag count");
    c_sta->add_option("--label", sta_label, "series label (default: file stem)");
    c_sta->add_option("--out", sta_out, "output CSV");

    // ---- markov -----------------------------------------------------------
    auto* c_mar = app.add_subcommand("markov", "Markov time estimation");
    std::string mar_input;
    double mar_dt = 1.0;
    markov::MarkovConfig mar_cfg;
    std::string mar_out = "markov.csv";
    c_mar->add_option("--input", mar_input, "series CSV")->required();
    c_mar->add_option("--dt", mar_dt, "sampling interval");
    c_mar->add_option("--entropy_bins", mar_cfg.n_bins, "joint histogram bins");
    c_mar->add_option("--entropy_threshold", mar_cfg.threshold,
                      "dH saturation threshold");
    c_mar->add_option("--tau_max", mar_cfg.tau_max, "largest entropy lag");
    c_mar->add_option("--pacf_max_lag", mar_cfg.pacf_max_lag, "largest PACF lag");
    c_mar->add_option("--out", mar_out, "output CSV");

    // ---- bins -------------------------------------------------------------
    auto* c_bin = app.add_subcommand("bins", "Adaptive zone-target binning");
    std::string bin_input;
    double bin_dt = 1.0;
    binning::ZoneTargets bin_targets;
    bool bin_wide = false;
    std::string bin_rule;
    std::string bin_out = "bins.csv";
    std::string bin_kde_out;
    std::string bin_kernel = "epanechnikov";
    double bin_bandwidth = 0.0;
    c_bin->add_option("--input", bin_input, "series CSV")->required();
    c_bin->add_option("--dt", bin_dt, "sampling interval");
    c_bin->add_flag("--wide_targets", bin_wide, "use the wider occupancy targets");
    c_bin->add_option("--core_min", bin_targets.core_min, "");
    c_bin->add_option("--core_max", bin_targets.core_max, "");
    c_bin->add_option("--shoulder_min", bin_targets.shoulder_min, "");
    c_bin->add_option("--shoulder_max", bin_targets.shoulder_max, "");
    c_bin->add_option("--tail_min", bin_targets.tail_min, "");
    c_bin->add_option("--tail_max", bin_targets.tail_max, "");
    c_bin->add_option("--rule", bin_rule,
                      "also print a classical bin count: sturges|scott|fd|doane");
    c_bin->add_option("--kde_out", bin_kde_out, "also write a KDE curve CSV");
    c_bin->add_option("--kernel", bin_kernel, "epanechnikov|gaussian");
    c_bin->add_option("--bandwidth", bin_bandwidth, "KDE bandwidth (0: Silverman)");
    c_bin->add_option("--out", bin_out, "output CSV");

    // ---- km ---------------------------------------------------------------
    auto* c_km = app.add_subcommand("km", "Kramers-Moyal coefficient estimation");
    std::string km_input;
    double km_dt = 1.0;
    std::string km_bins;
    binning::ZoneTargets km_targets;
    km::KMOptions km_opts;
    std::string km_out = "km.csv";
    std::string km_moments_out;
    std::string km_bins_out;
    c_km->add_option("--input", km_input, "detrended series CSV")->required();
    c_km->add_option("--dt", km_dt, "sampling interval");
    c_km->add_option("--bins", km_bins, "bin grid CSV (default: adaptive)");
    c_km->add_option("--core_min", km_targets.core_min, "");
    c_km->add_option("--core_max", km_targets.core_max, "");
    c_km->add_option("--shoulder_min", km_targets.shoulder_min, "");
    c_km->add_option("--shoulder_max", km_targets.shoulder_max, "");
    c_km->add_option("--tail_min", km_targets.tail_min, "");
    c_km->add_option("--tail_max", km_targets.tail_max, "");
    c_km->add_option("--orders", km_opts.orders, "moment orders")->delimiter(',');
    c_km->add_option("--lags", km_opts.lags, "regression lags")->delimiter(',');
    c_km->add_option("--min_occupancy", km_opts.min_occupancy,
                     "minimum samples per (bin, lag)");
    c_km->add_option("--d4_floor", km_opts.d4_floor,
                     "D4 floor for the undefined-ratio branch");
    c_km->add_option("--out", km_out, "output CSV");
    c_km->add_option("--moments_out", km_moments_out, "also write raw moments");
    c_km->add_option("--bins_out", km_bins_out, "also write the bin grid used");

    // ---- jumps ------------------------------------------------------------
    auto* c_jmp = app.add_subcommand("jumps", "Global jump-parameter inversion");
    std::string jmp_input;
    double jmp_dt = 1.0;
    std::vector<int> jmp_lags = {1, 2, 3, 4, 5, 6};
    std::string jmp_label;
    std::string jmp_out = "jumps.csv";
    c_jmp->add_option("--input", jmp_input, "detrended series CSV")->required();
    c_jmp->add_option("--dt", jmp_dt, "sampling interval");
    c_jmp->add_option("--lags", jmp_lags, "regression lags")->delimiter(',');
    c_jmp->add_option("--label", jmp_label, "series label (default: file stem)");
    c_jmp->add_option("--out", jmp_out, "output CSV");

    // ---- report -----------------------------------------------------------
    auto* c_rep = app.add_subcommand("report",
                                     "Concatenate per-series CSVs (same header)");
    std::vector<std::string> rep_inputs;
    std::string rep_out = "combined.csv";
    c_rep->add_option("inputs", rep_inputs, "input CSVs, in output order")
        ->required();
    c_rep->add_option("--out", rep_out, "combined CSV");

    // ---- pipeline -----------------------------------------------------------
    auto* c_pip = app.add_subcommand("pipeline", "Run every stage end to end");
    std::string pip_config_path;
    int pip_threads = 0;
    pipeline::PipelineConfig pip;
    pip.out_dir = default_out_dir;
    std::string pip_input_kind = "simulate";
    std::string pip_sim_kind = "ou";
    std::vector<double> pip_coeffs;
    std::string pip_family = "gamma";
    std::string pip_parameter = "phi";
    std::string pip_order = "intraday_first";
    std::string pip_adf_lags = "auto";
    c_pip->add_option("--config", pip_config_path,
                      "manifest-format config file; explicit flags win");
    c_pip->add_option("--threads", pip_threads, "worker thread count (0: default)");
    c_pip->add_option("--input_kind", pip_input_kind, "panel|series|simulate");
    c_pip->add_option("--input_path", pip.input_path, "input CSV");
    c_pip->add_option("--dt", pip.dt, "sampling interval for CSV input");
    c_pip->add_option("--label", pip.label, "series label");
    c_pip->add_option("--out_dir", pip.out_dir, "output directory");
    c_pip->add_option("--seed", pip.seed, "pipeline seed");
    c_pip->add_option("--sim_kind", pip_sim_kind, "simulator kind");
    c_pip->add_option("--drift_theta", pip.sim.drift_theta, "");
    c_pip->add_option("--b", pip.sim.b, "");
    c_pip->add_option("--lambda", pip.sim.lambda, "");
    c_pip->add_option("--sigma_xi", pip.sim.sigma_xi, "");
    c_pip->add_option("--sim_dt", pip.sim.dt, "");
    c_pip->add_option("--n", pip.sim.n, "");
    c_pip->add_option("--sim_seed", pip.sim.seed, "");
    c_pip->add_option("--x0", pip.sim.x0, "");
    c_pip->add_option("--ar_coeff", pip.sim.ar_coeff, "");
    c_pip->add_option("--profile_coeffs", pip_coeffs, "cubic a0,a1,a2,a3")
        ->delimiter(',');
    c_pip->add_option("--sim_points_per_day", pip.sim.points_per_day, "");
    c_pip->add_option("--family", pip_family, "gamma|inv_gamma|weibull|log_normal");
    c_pip->add_option("--parameter", pip_parameter, "phi|theta");
    c_pip->add_option("--window_days", pip.window_days, "");
    c_pip->add_option("--points_per_day", pip.points_per_day, "");
    c_pip->add_option("--detrend_order", pip_order,
                      "intraday_first|moving_average_first");
    c_pip->add_option("--core_min", pip.zone_targets.core_min, "");
    c_pip->add_option("--core_max", pip.zone_targets.core_max, "");
    c_pip->add_option("--shoulder_min", pip.zone_targets.shoulder_min, "");
    c_pip->add_option("--shoulder_max", pip.zone_targets.shoulder_max, "");
    c_pip->add_option("--tail_min", pip.zone_targets.tail_min, "");
    c_pip->add_option("--tail_max", pip.zone_targets.tail_max, "");
    c_pip->add_option("--orders", pip.orders, "moment orders")->delimiter(',');
    c_pip->add_option("--lags", pip.lags, "regression lags")->delimiter(',');
    c_pip->add_option("--min_occupancy", pip.min_occupancy, "");
    c_pip->add_option("--d4_floor", pip.d4_floor, "");
    c_pip->add_option("--entropy_bins", pip.entropy_bins, "");
    c_pip->add_option("--entropy_threshold", pip.entropy_threshold, "");
    c_pip->add_option("--tau_max", pip.tau_max, "");
    c_pip->add_option("--pacf_max_lag", pip.pacf_max_lag, "");
    c_pip->add_option("--adf_lags", pip_adf_lags, "auto or a lag count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*c_sim) {
            sim_cfg.kind = simulate::kind_from_name(sim_kind);
            if (!sim_coeffs.empty()) {
                if (sim_coeffs.size() != 4)
                    throw std::invalid_argument("--profile_coeffs takes 4 values");
                for (std::size_t i = 0; i < 4; ++i)
                    sim_cfg.profile_coeffs[i] = sim_coeffs[i];
            }
            const TimeSeries series = simulate::run(sim_cfg);
            io::write_series_csv(sim_out, series);
            std::cout << "wrote " << sim_out << " (" << series.values.size()
                      << " samples)\n";
            if (!sim_jump_log.empty()) {
                io::write_jump_log_csv(sim_jump_log, simulate::jump_log(sim_cfg));
                std::cout << "wrote " << sim_jump_log << '\n';
            }
        } else if (*c_fit) {
            const auto panel = io::read_panel_csv(fit_input);
            const auto params = dist_fit::fit_cross_section(
                panel, dist_fit::family_from_name(fit_family), fit_ppd);
            io::write_params_csv(fit_out, params);
            std::cout << "wrote " << fit_out << " (" << params.phi.size()
                      << " rows)\n";
        } else if (*c_det) {
            TimeSeries s = io::read_series_csv(det_input, det_dt);
            if (det_ppd > 0) s.points_per_day = det_ppd;
            const TimeSeries f =
                preprocess::detrend(s, det_window, order_from_name(det_order));
            io::write_series_csv(det_out, f);
            std::cout << "wrote " << det_out << '\n';
        } else if (*c_sta) {
            const TimeSeries s = io::read_series_csv(sta_input, sta_dt);
            const auto report = stationarity::stationarity_report(
                s, adf_lags_from_string(sta_adf_lags));
            const std::string label = sta_label.empty() ? s.label : sta_label;
            io::write_stationarity_csv(sta_out, label, report);
            std::cout << label << ": adf_p=" << report.adf.p_value
                      << " kpss_p=" << report.kpss.p_value << " verdict="
                      << stationarity::verdict_name(report.verdict) << '\n';
        } else if (*c_mar) {
            const TimeSeries s = io::read_series_csv(mar_input, mar_dt);
            const auto report = markov::markov_report(s, mar_cfg);
            io::write_markov_csv(mar_out, report);
            std::cout << "tau_m_entropy=" << report.tau_m_entropy.tau
                      << " tau_m_pacf=" << report.tau_m_pacf.tau
                      << " tau_m=" << report.tau_m << '\n';
        } else if (*c_bin) {
            const TimeSeries s = io::read_series_csv(bin_input, bin_dt);
            if (bin_wide) bin_targets = binning::ZoneTargets::wide();
            if (!bin_rule.empty()) {
                const std::size_t n = binning::classical_bin_count(
                    s.values, rule_from_name(bin_rule));
                std::cout << bin_rule << ": " << n << " bins\n";
            }
            const auto grid = binning::adaptive_bins(s.values, bin_targets);
            io::write_bins_csv(bin_out, grid);
            std::cout << "wrote " << bin_out << " (" << grid.centers.size()
                      << " bins, targets_met=" << grid.targets_met << ")\n";
            if (!bin_kde_out.empty()) {
                const auto kernel = bin_kernel == "gaussian"
                                        ? binning::KdeKernel::Gaussian
                                        : binning::KdeKernel::Epanechnikov;
                std::optional<double> bw;
                if (bin_bandwidth > 0.0) bw = bin_bandwidth;
                write_kde_csv(bin_kde_out, binning::kde(s.values, kernel, bw));
                std::cout << "wrote " << bin_kde_out << '\n';
            }
        } else if (*c_km) {
            const TimeSeries s = io::read_series_csv(km_input, km_dt);
            const binning::BinGrid grid =
                km_bins.empty() ? binning::adaptive_bins(s.values, km_targets)
                                : io::read_bins_csv(km_bins);
            if (!km_bins_out.empty()) io::write_bins_csv(km_bins_out, grid);
            const km::KMResult result = km::km_analysis(s, grid, km_opts);
            io::write_km_csv(km_out, result);
            std::cout << "wrote " << km_out << " (" << result.bins.size()
                      << " bins)\n";
            if (!km_moments_out.empty()) {
                const auto table = km::raw_conditional_moments(
                    s, grid, km_opts.orders, km_opts.lags, km_opts.min_occupancy);
                io::write_moments_csv(km_moments_out, table);
                std::cout << "wrote " << km_moments_out << '\n';
            }
        } else if (*c_jmp) {
            const TimeSeries s = io::read_series_csv(jmp_input, jmp_dt);
            const auto moments =
                jumps::global_infinitesimal_moments(s, jmp_lags, s.dt);
            const auto inv = jumps::invert_or_diffusion(moments);
            const std::string label = jmp_label.empty() ? s.label : jmp_label;
            io::write_jumps_csv(jmp_out, label, inv.params, inv.decomp);
            if (!inv.inverted)
                std::cerr << "note: even moments are nonpositive; reporting a "
                             "pure-diffusion decomposition\n";
            if (inv.params.negative_b2)
                std::cerr << "warning: inverted continuous amplitude b^2 is "
                             "negative ("
                          << inv.params.b2 << ")\n";
            std::cout << label << ": lambda=" << inv.params.lambda
                      << " sigma_xi2=" << inv.params.sigma_xi2
                      << " f_jump=" << inv.params.f_jump << '\n';
        } else if (*c_rep) {
            io::Table combined;
            for (const auto& input : rep_inputs) {
                io::Table t = io::read_table(input);
                if (combined.header.empty()) {
                    combined.header = t.header;
                } else if (t.header != combined.header) {
                    throw std::runtime_error("header mismatch in '" + input +
                                             "': all inputs must share one "
                                             "table shape");
                }
                for (auto& row : t.rows) combined.rows.push_back(std::move(row));
            }
            std::ofstream out(rep_out);
            if (!out.is_open())
                throw io::CsvError(rep_out, 0, "cannot open for writing");
            for (std::size_t c = 0; c < combined.header.size(); ++c)
                out << (c ? "," : "") << combined.header[c];
            out << '\n';
            for (const auto& row : combined.rows) {
                for (std::size_t c = 0; c < row.size(); ++c)
                    out << (c ? "," : "") << row[c];
                out << '\n';
            }
            out.flush();
            if (!out) throw io::CsvError(rep_out, 0, "write failed");
            std::cout << "wrote " << rep_out << " (" << combined.rows.size()
                      << " rows)\n";
        } else if (*c_pip) {
            if (pip_threads > 0) {
#ifdef _OPENMP
                omp_set_num_threads(pip_threads);
#else
                std::cerr << "warning: built without OpenMP; --threads ignored\n";
#endif
            }
            pipeline::PipelineConfig cfg;
            if (!pip_config_path.empty())
                cfg = pipeline::parse_config(slurp(pip_config_path));
            else
                cfg.out_dir = default_out_dir;

            // Explicit flags override the config file.
            const auto passed = [&](const char* name) {
                return c_pip->count(name) > 0;
            };
            if (passed("--input_kind") || pip_config_path.empty()) {
                if (pip_input_kind == "panel")
                    cfg.input_kind = pipeline::InputKind::Panel;
                else if (pip_input_kind == "series")
                    cfg.input_kind = pipeline::InputKind::Series;
                else if (pip_input_kind == "simulate")
                    cfg.input_kind = pipeline::InputKind::Simulate;
                else
                    throw std::invalid_argument("unknown input kind '" +
                                                pip_input_kind + "'");
            }
            if (passed("--input_path")) cfg.input_path = pip.input_path;
            if (passed("--dt")) cfg.dt = pip.dt;
            if (passed("--label")) cfg.label = pip.label;
            if (passed("--out_dir")) cfg.out_dir = pip.out_dir;
            if (passed("--seed")) cfg.seed = pip.seed;
            if (passed("--sim_kind"))
                cfg.sim.kind = simulate::kind_from_name(pip_sim_kind);
            if (passed("--drift_theta")) cfg.sim.drift_theta = pip.sim.drift_theta;
            if (passed("--b")) cfg.sim.b = pip.sim.b;
            if (passed("--lambda")) cfg.sim.lambda = pip.sim.lambda;
            if (passed("--sigma_xi")) cfg.sim.sigma_xi = pip.sim.sigma_xi;
            if (passed("--sim_dt")) cfg.sim.dt = pip.sim.dt;
            if (passed("--n")) cfg.sim.n = pip.sim.n;
            if (passed("--sim_seed")) cfg.sim.seed = pip.sim.seed;
            if (passed("--x0")) cfg.sim.x0 = pip.sim.x0;
            if (passed("--ar_coeff")) cfg.sim.ar_coeff = pip.sim.ar_coeff;
            if (passed("--profile_coeffs")) {
                if (pip_coeffs.size() != 4)
                    throw std::invalid_argument("--profile_coeffs takes 4 values");
                for (std::size_t i = 0; i < 4; ++i)
                    cfg.sim.profile_coeffs[i] = pip_coeffs[i];
            }
            if (passed("--sim_points_per_day"))
                cfg.sim.points_per_day = pip.sim.points_per_day;
            if (passed("--family"))
                cfg.family = dist_fit::family_from_name(pip_family);
            if (passed("--parameter"))
                cfg.parameter = parameter_from_name(pip_parameter);
            if (passed("--window_days")) cfg.window_days = pip.window_days;
            if (passed("--points_per_day"))
                cfg.points_per_day = pip.points_per_day;
            if (passed("--detrend_order"))
                cfg.detrend_order = order_from_name(pip_order);
            if (passed("--core_min"))
                cfg.zone_targets.core_min = pip.zone_targets.core_min;
            if (passed("--core_max"))
                cfg.zone_targets.core_max = pip.zone_targets.core_max;
            if (passed("--shoulder_min"))
                cfg.zone_targets.shoulder_min = pip.zone_targets.shoulder_min;
            if (passed("--shoulder_max"))
                cfg.zone_targets.shoulder_max = pip.zone_targets.shoulder_max;
            if (passed("--tail_min"))
                cfg.zone_targets.tail_min = pip.zone_targets.tail_min;
            if (passed("--tail_max"))
                cfg.zone_targets.tail_max = pip.zone_targets.tail_max;
            if (passed("--orders")) cfg.orders = pip.orders;
            if (passed("--lags")) cfg.lags = pip.lags;
            if (passed("--min_occupancy")) cfg.min_occupancy = pip.min_occupancy;
            if (passed("--d4_floor")) cfg.d4_floor = pip.d4_floor;
            if (passed("--entropy_bins")) cfg.entropy_bins = pip.entropy_bins;
            if (passed("--entropy_threshold"))
                cfg.entropy_threshold = pip.entropy_threshold;
            if (passed("--tau_max")) cfg.tau_max = pip.tau_max;
            if (passed("--pacf_max_lag")) cfg.pacf_max_lag = pip.pacf_max_lag;
            if (passed("--adf_lags"))
                cfg.adf_lags = adf_lags_from_string(pip_adf_lags);

            const pipeline::PipelineOutputs outputs = pipeline::run_pipeline(cfg);
            for (const auto& f : outputs.files) std::cout << f.string() << '\n';
        }
    } catch (const pipeline::PipelineError& e) {
        std::cerr << e.module() << ": " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

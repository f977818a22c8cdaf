#pragma once

// The end-to-end batch pipeline: ingest (or simulate), fit, detrend, test
// stationarity and Markovianity, bin, estimate KM coefficients, invert jump
// parameters, and write the report bundle.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jdkm/binning.hpp"
#include "jdkm/dist_fit.hpp"
#include "jdkm/km.hpp"
#include "jdkm/markov.hpp"
#include "jdkm/preprocess.hpp"
#include "jdkm/simulate.hpp"

namespace jdkm::pipeline {

enum class InputKind { Panel, Series, Simulate };
enum class Parameter { Phi, Theta };

struct PipelineConfig {
    InputKind input_kind = InputKind::Simulate;
    std::string input_path;      // Panel/Series input
    simulate::SimConfig sim;     // Simulate input
    double dt = 1.0;             // sampling interval for CSV input

    dist_fit::DistFamily family = dist_fit::DistFamily::Gamma;
    Parameter parameter = Parameter::Phi;

    int window_days = 21;
    int points_per_day = 38;
    preprocess::DetrendOrder detrend_order =
        preprocess::DetrendOrder::IntradayFirst;

    binning::ZoneTargets zone_targets;
    std::vector<int> lags = {1, 2, 3, 4, 5, 6};
    std::vector<int> orders = {1, 2, 3, 4, 5, 6};
    std::size_t min_occupancy = 50;
    double d4_floor = 1e-9;

    int entropy_bins = 30;
    double entropy_threshold = 0.005;
    int tau_max = 20;
    int pacf_max_lag = 20;
    std::optional<int> adf_lags; // nullopt: Schwert's rule

    std::string out_dir = "out";
    std::string label = "series";
    std::uint64_t seed = 1;
};

// Module errors surface with the module's name; the CLI prints
// "<module>: <message>" and exits nonzero.
class PipelineError : public std::runtime_error {
public:
    PipelineError(std::string module, const std::string& message);
    [[nodiscard]] const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

struct PipelineOutputs {
    std::vector<std::filesystem::path> files;
};

/// Runs every stage and writes the bundle (params.csv when fitting a panel,
/// detrended.csv, stationarity.csv, markov.csv, bins.csv, km.csv,
/// moments_long.csv, jumps.csv, run_manifest.txt) into out_dir. Any failure
/// removes the files already written before rethrowing as PipelineError.
PipelineOutputs run_pipeline(const PipelineConfig& config);

// Manifest (de)serialization: flat key = value lines under [section]
// headers, floats at 17 significant digits, lossless round-trip.
[[nodiscard]] std::string serialize_config(const PipelineConfig& config);
[[nodiscard]] PipelineConfig parse_config(const std::string& text);

} // namespace jdkm::pipeline

#pragma once

// CSV serialization for every artifact the pipeline emits, and the readers
// that make those files round-trip. All floating-point output uses 17
// significant digits so a written value parses back to the identical bits.

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "jdkm/binning.hpp"
#include "jdkm/dist_fit.hpp"
#include "jdkm/jumps.hpp"
#include "jdkm/km.hpp"
#include "jdkm/markov.hpp"
#include "jdkm/series.hpp"
#include "jdkm/simulate.hpp"
#include "jdkm/stationarity.hpp"

namespace jdkm::io {

// Parse/format failures carry the file and 1-based line number.
class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& file, std::size_t line, const std::string& what);
};

[[nodiscard]] std::string format17(double v);
[[nodiscard]] double parse_double(const std::string& cell,
                                  const std::string& file, std::size_t line);

// Generic table: header row plus string cells, for the report aggregator.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] std::size_t column(const std::string& name) const;
};

[[nodiscard]] Table read_table(const std::filesystem::path& path);

// Series CSV: day,idx,value with strict (day, idx) ordering. dt is not part
// of the format; pass it where the caller knows it.
void write_series_csv(const std::filesystem::path& path, const TimeSeries& s);
[[nodiscard]] TimeSeries read_series_csv(const std::filesystem::path& path,
                                         double dt = 1.0);

// Panel CSV: t,<entity>... ; empty cells are missing values (NaN).
void write_panel_csv(const std::filesystem::path& path,
                     const std::vector<std::vector<double>>& panel);
[[nodiscard]] std::vector<std::vector<double>> read_panel_csv(
    const std::filesystem::path& path);

void write_params_csv(const std::filesystem::path& path,
                      const dist_fit::ParamSeries& params);

void write_stationarity_csv(const std::filesystem::path& path,
                            const std::string& label,
                            const stationarity::StationarityReport& report);

void write_markov_csv(const std::filesystem::path& path,
                      const markov::MarkovReport& report);

void write_bins_csv(const std::filesystem::path& path,
                    const binning::BinGrid& grid);
[[nodiscard]] binning::BinGrid read_bins_csv(const std::filesystem::path& path);

void write_km_csv(const std::filesystem::path& path, const km::KMResult& result);

void write_moments_csv(const std::filesystem::path& path,
                       const km::MomentTable& table);

void write_jumps_csv(const std::filesystem::path& path,
                     const std::string& label, const jumps::JumpParams& params,
                     const jumps::Decomposition& decomp);

void write_jump_log_csv(const std::filesystem::path& path,
                        const std::vector<simulate::JumpEvent>& log);

} // namespace jdkm::io

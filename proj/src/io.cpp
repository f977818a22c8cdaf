#include "jdkm/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

namespace jdkm::io {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::string chomp(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n'))
        line.pop_back();
    return line;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out.is_open())
        throw CsvError(path.string(), 0, "cannot open for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in.is_open()) throw CsvError(path.string(), 0, "cannot open for reading");
    return in;
}

long parse_long(const std::string& cell, const std::string& file,
                std::size_t line) {
    if (cell.empty()) throw CsvError(file, line, "empty integer cell");
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(cell.c_str(), &end, 10);
    if (errno != 0 || end == cell.c_str() || *end != '\0')
        throw CsvError(file, line, "bad integer '" + cell + "'");
    return v;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw CsvError(path.string(), 0, "write failed");
}

} // namespace

CsvError::CsvError(const std::string& file, std::size_t line,
                   const std::string& what)
    : std::runtime_error(file + ":" + std::to_string(line) + ": " + what) {}

std::string format17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& cell, const std::string& file,
                    std::size_t line) {
    if (cell.empty()) return kNaN; // empty cell = missing value
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0')
        throw CsvError(file, line, "bad number '" + cell + "'");
    return v;
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw std::out_of_range("Table: no column named '" + name + "'");
}

Table read_table(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    Table table;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = chomp(line);
        if (line.empty() || line.front() == '#') continue;
        if (table.header.empty()) {
            table.header = split_csv_line(line);
            continue;
        }
        auto cells = split_csv_line(line);
        if (cells.size() != table.header.size())
            throw CsvError(path.string(), lineno, "wrong number of cells");
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty())
        throw CsvError(path.string(), 0, "missing header row");
    return table;
}

void write_series_csv(const std::filesystem::path& path, const TimeSeries& s) {
    std::ofstream out = open_out(path);
    out << "day,idx,value\n";
    const auto ppd = static_cast<std::size_t>(s.points_per_day);
    for (std::size_t t = 0; t < s.values.size(); ++t)
        out << (t / ppd) << ',' << (t % ppd) << ',' << format17(s.values[t])
            << '\n';
    finish(out, path);
}

TimeSeries read_series_csv(const std::filesystem::path& path, double dt) {
    std::ifstream in = open_in(path);
    const std::string file = path.string();
    std::string line;
    std::size_t lineno = 0;

    if (!std::getline(in, line)) throw CsvError(file, 0, "empty file");
    ++lineno;
    if (chomp(line) != "day,idx,value")
        throw CsvError(file, lineno, "expected header 'day,idx,value'");

    std::vector<long> days;
    std::vector<long> idxs;
    TimeSeries s;
    while (std::getline(in, line)) {
        ++lineno;
        line = chomp(line);
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() != 3)
            throw CsvError(file, lineno, "expected 3 cells");
        days.push_back(parse_long(cells[0], file, lineno));
        idxs.push_back(parse_long(cells[1], file, lineno));
        s.values.push_back(parse_double(cells[2], file, lineno));
    }
    if (s.values.empty()) throw CsvError(file, lineno, "no data rows");

    long max_idx = 0;
    for (long i : idxs) max_idx = std::max(max_idx, i);
    const long ppd = max_idx + 1;
    for (std::size_t r = 0; r < days.size(); ++r) {
        const auto t = static_cast<long>(r);
        if (days[r] != t / ppd || idxs[r] != t % ppd)
            throw CsvError(file, r + 2, "rows out of (day, idx) order");
    }
    s.dt = dt;
    s.points_per_day = static_cast<int>(ppd);
    s.label = path.stem().string();
    return s;
}

void write_panel_csv(const std::filesystem::path& path,
                     const std::vector<std::vector<double>>& panel) {
    std::ofstream out = open_out(path);
    const std::size_t cols = panel.empty() ? 0 : panel.front().size();
    out << 't';
    for (std::size_t c = 0; c < cols; ++c) out << ",e" << c;
    out << '\n';
    for (std::size_t r = 0; r < panel.size(); ++r) {
        if (panel[r].size() != cols)
            throw CsvError(path.string(), r + 2, "ragged panel row");
        out << r;
        for (double v : panel[r]) {
            out << ',';
            if (!std::isnan(v)) out << format17(v);
        }
        out << '\n';
    }
    finish(out, path);
}

std::vector<std::vector<double>> read_panel_csv(const std::filesystem::path& path) {
    const Table table = read_table(path);
    const std::string file = path.string();
    if (table.header.empty() || table.header[0] != "t")
        throw CsvError(file, 1, "expected first column 't'");
    std::vector<std::vector<double>> panel(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (parse_long(row[0], file, r + 2) != static_cast<long>(r))
            throw CsvError(file, r + 2, "rows out of t order");
        panel[r].resize(row.size() - 1);
        for (std::size_t c = 1; c < row.size(); ++c)
            panel[r][c - 1] = parse_double(row[c], file, r + 2);
    }
    return panel;
}

void write_params_csv(const std::filesystem::path& path,
                      const dist_fit::ParamSeries& params) {
    std::ofstream out = open_out(path);
    out << "t,phi,theta,converged\n";
    for (std::size_t t = 0; t < params.phi.size(); ++t)
        out << t << ',' << format17(params.phi[t]) << ','
            << format17(params.theta[t]) << ','
            << static_cast<int>(params.row_converged[t]) << '\n';
    finish(out, path);
}

void write_stationarity_csv(const std::filesystem::path& path,
                            const std::string& label,
                            const stationarity::StationarityReport& report) {
    std::ofstream out = open_out(path);
    out << "label,adf_t,adf_p,adf_lags,adf_p_floored,adf_p_capped,"
           "kpss_stat,kpss_p,kpss_p_floored,kpss_p_capped,verdict\n";
    out << label << ',' << format17(report.adf.t_stat) << ','
        << format17(report.adf.p_value) << ',' << report.adf.lags_used << ','
        << report.adf.p_floored << ',' << report.adf.p_capped << ','
        << format17(report.kpss.stat) << ',' << format17(report.kpss.p_value)
        << ',' << report.kpss.p_floored << ',' << report.kpss.p_capped << ','
        << stationarity::verdict_name(report.verdict) << '\n';
    finish(out, path);
}

void write_markov_csv(const std::filesystem::path& path,
                      const markov::MarkovReport& report) {
    std::ofstream out = open_out(path);
    // One table: per-lag diagnostics, with the scalar summary repeated on
    // the first row only (empty cells elsewhere).
    out << "tau,H,dH,pacf,acf,pacf_bound,tau_m_entropy,entropy_saturated,"
           "tau_m_pacf,pacf_saturated,tau_m\n";
    const std::size_t rows =
        std::max(report.entropy_curve.size(), report.pacf.size());
    for (std::size_t r = 0; r < rows; ++r) {
        out << (r + 1) << ',';
        if (r < report.entropy_curve.size())
            out << format17(report.entropy_curve[r].H) << ','
                << format17(report.entropy_curve[r].dH) << ',';
        else
            out << ",,";
        if (r < report.pacf.size())
            out << format17(report.pacf[r]) << ',';
        else
            out << ',';
        if (r < report.acf.size())
            out << format17(report.acf[r]) << ',';
        else
            out << ',';
        if (r == 0)
            out << format17(report.pacf_bound) << ',' << report.tau_m_entropy.tau
                << ',' << report.tau_m_entropy.saturated << ','
                << report.tau_m_pacf.tau << ',' << report.tau_m_pacf.saturated
                << ',' << report.tau_m;
        else
            out << ",,,,,";
        out << '\n';
    }
    finish(out, path);
}

void write_bins_csv(const std::filesystem::path& path,
                    const binning::BinGrid& grid) {
    std::ofstream out = open_out(path);
    out << "bin,left_edge,right_edge,center,count,zone,sigma,mu,targets_met\n";
    for (std::size_t b = 0; b < grid.centers.size(); ++b)
        out << b << ',' << format17(grid.edges[b]) << ','
            << format17(grid.edges[b + 1]) << ',' << format17(grid.centers[b])
            << ',' << grid.counts[b] << ',' << binning::zone_name(grid.zones[b])
            << ',' << format17(grid.sigma) << ',' << format17(grid.mu) << ','
            << grid.targets_met << '\n';
    finish(out, path);
}

binning::BinGrid read_bins_csv(const std::filesystem::path& path) {
    const Table table = read_table(path);
    const std::string file = path.string();
    if (table.rows.empty()) throw CsvError(file, 2, "no bins");
    const std::size_t c_left = table.column("left_edge");
    const std::size_t c_right = table.column("right_edge");
    const std::size_t c_center = table.column("center");
    const std::size_t c_count = table.column("count");
    const std::size_t c_zone = table.column("zone");

    binning::BinGrid grid;
    const std::size_t bins = table.rows.size();
    grid.edges.resize(bins + 1);
    grid.centers.resize(bins);
    grid.counts.resize(bins);
    grid.zones.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        const auto& row = table.rows[b];
        const std::size_t lineno = b + 2;
        const double left = parse_double(row[c_left], file, lineno);
        const double right = parse_double(row[c_right], file, lineno);
        if (b == 0) grid.edges[0] = left;
        if (left != grid.edges[b])
            throw CsvError(file, lineno, "discontinuous bin edges");
        if (!(right > left))
            throw CsvError(file, lineno, "edges not strictly increasing");
        grid.edges[b + 1] = right;
        grid.centers[b] = parse_double(row[c_center], file, lineno);
        const long cnt = parse_long(row[c_count], file, lineno);
        if (cnt < 0) throw CsvError(file, lineno, "negative count");
        grid.counts[b] = static_cast<std::size_t>(cnt);
        const std::string& z = row[c_zone];
        if (z == "core")
            grid.zones[b] = binning::Zone::Core;
        else if (z == "shoulder")
            grid.zones[b] = binning::Zone::Shoulder;
        else if (z == "tail")
            grid.zones[b] = binning::Zone::Tail;
        else
            throw CsvError(file, lineno, "unknown zone '" + z + "'");
    }
    grid.sigma = parse_double(table.rows[0][table.column("sigma")], file, 2);
    grid.mu = parse_double(table.rows[0][table.column("mu")], file, 2);
    grid.targets_met =
        parse_long(table.rows[0][table.column("targets_met")], file, 2) != 0;
    return grid;
}

void write_km_csv(const std::filesystem::path& path, const km::KMResult& result) {
    std::ofstream out = open_out(path);
    out << "center,occupancy";
    const char* blocks[] = {"M", "beta", "r2", "sigma_intercept", "sigma_w",
                            "F", "D"};
    for (const char* blk : blocks)
        for (int n = 1; n <= 6; ++n) out << ',' << blk << n;
    out << ",ratio,ratio_defined,classification\n";

    for (const auto& bin : result.bins) {
        out << format17(bin.center) << ',' << bin.occupancy;
        const auto reg_field = [&](auto getter) {
            for (const auto& r : bin.reg) {
                out << ',';
                out << (r.present ? format17(getter(r)) : "nan");
            }
        };
        reg_field([](const km::Regression& r) { return r.M; });
        reg_field([](const km::Regression& r) { return r.beta; });
        reg_field([](const km::Regression& r) { return r.r2; });
        reg_field([](const km::Regression& r) { return r.sigma_intercept; });
        reg_field([](const km::Regression& r) { return r.sigma_w; });
        for (double f : bin.F) out << ',' << format17(f);
        for (double d : bin.D) out << ',' << format17(d);
        out << ',' << format17(bin.ratio) << ',' << bin.ratio_defined << ','
            << km::classification_name(bin.classification) << '\n';
    }
    finish(out, path);
}

void write_moments_csv(const std::filesystem::path& path,
                       const km::MomentTable& table) {
    std::ofstream out = open_out(path);
    out << "bin,order,lag,K,occupancy\n";
    for (std::size_t b = 0; b < table.n_bins; ++b)
        for (std::size_t oi = 0; oi < table.orders.size(); ++oi)
            for (std::size_t li = 0; li < table.lags.size(); ++li)
                out << b << ',' << table.orders[oi] << ',' << table.lags[li]
                    << ',' << format17(table.k(oi, b, li)) << ','
                    << table.occ(b, li) << '\n';
    finish(out, path);
}

void write_jumps_csv(const std::filesystem::path& path, const std::string& label,
                     const jumps::JumpParams& params,
                     const jumps::Decomposition& decomp) {
    std::ofstream out = open_out(path);
    out << "label,lambda,sigma_xi,sigma_xi2,m2,b2,d_jump,d_cont,f_jump,"
           "negative_b2,negative_cont\n";
    out << label << ',' << format17(params.lambda) << ','
        << format17(std::sqrt(params.sigma_xi2)) << ','
        << format17(params.sigma_xi2) << ',' << format17(params.m2) << ','
        << format17(params.b2) << ',' << format17(decomp.d_jump) << ','
        << format17(decomp.d_cont) << ',' << format17(decomp.f_jump) << ','
        << params.negative_b2 << ',' << decomp.negative_cont << '\n';
    finish(out, path);
}

void write_jump_log_csv(const std::filesystem::path& path,
                        const std::vector<simulate::JumpEvent>& log) {
    std::ofstream out = open_out(path);
    out << "step,size\n";
    for (const auto& ev : log)
        out << ev.step << ',' << format17(ev.size) << '\n';
    finish(out, path);
}

} // namespace jdkm::io

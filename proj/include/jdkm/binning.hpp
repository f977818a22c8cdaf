#pragma once

// State-space partitioning: classical bin-count rules, the zone-adaptive
// equal-occupancy grid used for conditional-moment estimation, and a KDE
// diagnostic.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace jdkm::binning {

enum class Zone { Core, Shoulder, Tail };

[[nodiscard]] std::string zone_name(Zone zone);

struct ZoneTargets {
    std::size_t core_min = 350, core_max = 400;
    std::size_t shoulder_min = 250, shoulder_max = 300;
    std::size_t tail_min = 150, tail_max = 200;

    // The alternate occupancy targets (wider bins everywhere).
    [[nodiscard]] static ZoneTargets wide();
};

struct BinGrid {
    std::vector<double> edges;        // strictly increasing, size = bins + 1
    std::vector<double> centers;      // midpoints
    std::vector<std::size_t> counts;  // construction-sample occupancy
    std::vector<Zone> zones;          // by |center - mu| relative to sigma
    double sigma = 0.0;               // sample s.d. used for zone boundaries
    double mu = 0.0;                  // sample mean: origin of the zones
    bool targets_met = true;          // every count inside its zone's range
};

enum class BinRule { FreedmanDiaconis, Scott, Sturges, Doane };

/// Classical bin-count formulas. Sturges: ceil(log2 N) + 1; Scott:
/// range / (3.49 s N^(-1/3)); FD: range / (2 IQR N^(-1/3)); Doane: Sturges
/// plus the log2(1 + |g1|/sigma_g1) skewness correction. Throws
/// std::invalid_argument on N < 4 and std::runtime_error on zero
/// dispersion where the rule needs it.
[[nodiscard]] std::size_t classical_bin_count(std::span<const double> x,
                                              BinRule rule);

/// Zone-adaptive grid: the halves below and above the sample mean are cut
/// separately at quantiles so that each bin's occupancy lands inside the
/// [min, max] of the zone its center falls in (zones by |x - mu| against
/// the sample s.d.: core < sigma <= shoulder < 2 sigma <= tail). Small
/// transfers across zone boundaries reconcile integer-divisibility gaps;
/// where a zone is too thin even for one bin its samples merge inward and
/// targets_met is cleared. Throws std::invalid_argument when the total
/// sample count cannot meet the minima with one bin per zone.
[[nodiscard]] BinGrid adaptive_bins(std::span<const double> x,
                                    const ZoneTargets& targets = {});

/// Index of the bin containing x, or -1 outside [edges.front(),
/// edges.back()]. Half-open bins, last bin closed.
[[nodiscard]] int find_bin(const BinGrid& grid, double x);

enum class KdeKernel { Epanechnikov, Gaussian };

struct KdeResult {
    std::vector<double> grid;    // 512 points spanning [min-3h, max+3h]
    std::vector<double> density;
    double bandwidth = 0.0;
};

/// Kernel density estimate on a fixed 512-point grid. Bandwidth defaults
/// to Silverman's rule 0.9 min(s, IQR/1.34) N^(-1/5). Diagnostic only:
/// nothing downstream consumes it.
[[nodiscard]] KdeResult kde(std::span<const double> x, KdeKernel kernel,
                            std::optional<double> bandwidth = std::nullopt);

} // namespace jdkm::binning

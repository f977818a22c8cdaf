#include "jdkm/binning.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "jdkm/stats.hpp"

namespace jdkm::binning {

std::string zone_name(Zone zone) {
    switch (zone) {
        case Zone::Core: return "core";
        case Zone::Shoulder: return "shoulder";
        case Zone::Tail: return "tail";
    }
    throw std::invalid_argument("zone_name: unknown zone");
}

ZoneTargets ZoneTargets::wide() {
    ZoneTargets t;
    t.core_min = 400;
    t.core_max = 500;
    t.shoulder_min = 300;
    t.shoulder_max = 400;
    t.tail_min = 200;
    t.tail_max = 300;
    return t;
}

std::size_t classical_bin_count(std::span<const double> x, BinRule rule) {
    const std::size_t n = x.size();
    if (n < 4)
        throw std::invalid_argument("classical_bin_count: need at least 4 samples");

    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double range = *hi_it - *lo_it;
    const double nd = static_cast<double>(n);

    const auto sturges = static_cast<std::size_t>(std::ceil(std::log2(nd))) + 1;
    switch (rule) {
        case BinRule::Sturges:
            return sturges;
        case BinRule::Scott: {
            const double s = stats::stddev(x);
            if (!(s > 0.0))
                throw std::runtime_error("classical_bin_count: zero variance (Scott)");
            const double width = 3.49 * s * std::pow(nd, -1.0 / 3.0);
            return static_cast<std::size_t>(std::ceil(range / width));
        }
        case BinRule::FreedmanDiaconis: {
            const double iqr = stats::iqr(x);
            if (!(iqr > 0.0))
                throw std::runtime_error("classical_bin_count: zero IQR (FD)");
            const double width = 2.0 * iqr * std::pow(nd, -1.0 / 3.0);
            return static_cast<std::size_t>(std::ceil(range / width));
        }
        case BinRule::Doane: {
            const double g1 = stats::skewness(x);
            const double sg1 =
                std::sqrt(6.0 * (nd - 2.0) / ((nd + 1.0) * (nd + 3.0)));
            const auto corr = static_cast<long>(
                std::llround(std::log2(1.0 + std::fabs(g1) / sg1)));
            return sturges + static_cast<std::size_t>(std::max(corr, 0L));
        }
    }
    throw std::invalid_argument("classical_bin_count: unknown rule");
}

namespace {

struct ZonePool {
    // Contiguous range [begin, end) of the sorted sample array.
    std::size_t begin = 0;
    std::size_t end = 0;
    std::size_t lo = 0; // occupancy targets of the zone the pool feeds
    std::size_t hi = 0;

    [[nodiscard]] std::size_t size() const { return end - begin; }
};

// Choose the bin count for a pool of n samples, or 0 when the zone cannot
// host even one bin within [lo, hi] after transfers.
std::size_t feasible_bins(std::size_t n, std::size_t lo, std::size_t hi) {
    if (n == 0) return 0;
    const std::size_t k = (n + hi - 1) / hi; // smallest count by capacity
    return (k * lo <= n) ? k : 0;
}

// Resolve occupancy infeasibility between a pool and its inward neighbour
// by moving the smaller of (borrow, shed) across their shared boundary.
// `outer_first` says whether `outer` precedes `inner` in sorted order.
void reconcile(ZonePool& outer, ZonePool& inner, bool outer_first) {
    const std::size_t n = outer.size();
    if (n == 0 || feasible_bins(n, outer.lo, outer.hi) > 0) return;

    const std::size_t k = (n + outer.hi - 1) / outer.hi;
    const std::size_t borrow = k * outer.lo - n;
    const std::size_t shed = (k >= 2) ? n - (k - 1) * outer.hi : n;

    if (borrow <= shed && inner.size() >= borrow) {
        // Grow the outer pool into the inner one.
        if (outer_first) {
            outer.end += borrow;
            inner.begin += borrow;
        } else {
            outer.begin -= borrow;
            inner.end -= borrow;
        }
    } else {
        // Shrink the outer pool (possibly to nothing) into the inner one.
        if (outer_first) {
            outer.end -= shed;
            inner.begin -= shed;
        } else {
            outer.begin += shed;
            inner.end += shed;
        }
    }
}

// Cut a pool into even-occupancy bins, absorbing ties so edges between
// bins always separate distinct values. Appends cut indices (bin end
// positions in the sorted array) and whether the pool met its targets.
void cut_pool(const ZonePool& pool, std::vector<std::size_t>& cuts) {
    const std::size_t n = pool.size();
    if (n == 0) return;
    std::size_t k = feasible_bins(n, pool.lo, pool.hi);
    if (k == 0) k = std::max<std::size_t>(
        1, (2 * n + pool.lo + pool.hi) / (pool.lo + pool.hi)); // best effort
    const std::size_t base = n / k;
    const std::size_t extra = n % k;
    std::size_t pos = pool.begin;
    for (std::size_t i = 0; i < k; ++i) {
        pos += base + (i < extra ? 1 : 0);
        cuts.push_back(pos);
    }
}

} // namespace

BinGrid adaptive_bins(std::span<const double> x, const ZoneTargets& targets) {
    if (!(targets.core_min < targets.core_max) ||
        !(targets.shoulder_min < targets.shoulder_max) ||
        !(targets.tail_min < targets.tail_max) || targets.tail_min == 0)
        throw std::invalid_argument("adaptive_bins: bad zone targets");
    const std::size_t n = x.size();
    const std::size_t need =
        2 * (targets.core_min + targets.shoulder_min + targets.tail_min);
    if (n < need)
        throw std::invalid_argument(
            "adaptive_bins: too few samples to fill one bin per zone");

    std::vector<double> s(x.begin(), x.end());
    std::sort(s.begin(), s.end());

    const double mu = stats::mean(s);
    const double sigma = stats::stddev(s);
    if (!(sigma > 0.0)) throw std::runtime_error("adaptive_bins: zero variance");

    // Boundary indices of the six zone segments along the sorted axis:
    // tail- | shoulder- | core- | core+ | shoulder+ | tail+.
    const auto cut_at = [&](double v) {
        return static_cast<std::size_t>(
            std::lower_bound(s.begin(), s.end(), v) - s.begin());
    };
    const std::size_t i_m2 = cut_at(mu - 2.0 * sigma);
    const std::size_t i_m1 = cut_at(mu - sigma);
    const std::size_t i_0 = cut_at(mu);
    const std::size_t i_p1 = cut_at(mu + sigma);
    const std::size_t i_p2 = cut_at(mu + 2.0 * sigma);

    // Negative half (descending distance from mu): tail, shoulder, core.
    ZonePool neg_tail{0, i_m2, targets.tail_min, targets.tail_max};
    ZonePool neg_sh{i_m2, i_m1, targets.shoulder_min, targets.shoulder_max};
    ZonePool neg_core{i_m1, i_0, targets.core_min, targets.core_max};
    // Positive half.
    ZonePool pos_core{i_0, i_p1, targets.core_min, targets.core_max};
    ZonePool pos_sh{i_p1, i_p2, targets.shoulder_min, targets.shoulder_max};
    ZonePool pos_tail{i_p2, n, targets.tail_min, targets.tail_max};

    const std::array<ZonePool*, 6> pools = {&neg_tail, &neg_sh,  &neg_core,
                                            &pos_core, &pos_sh, &pos_tail};
    std::array<std::size_t, 6> initial_sizes{};
    for (std::size_t i = 0; i < pools.size(); ++i) initial_sizes[i] = pools[i]->size();

    // Fix infeasible pools outermost-first so adjustments flow inward.
    reconcile(neg_tail, neg_sh, true);
    reconcile(neg_sh, neg_core, true);
    reconcile(pos_tail, pos_sh, false);
    reconcile(pos_sh, pos_core, false);

    bool pools_ok = true;
    for (std::size_t i = 0; i < pools.size(); ++i) {
        const std::size_t sz = pools[i]->size();
        if (sz > 0 && feasible_bins(sz, pools[i]->lo, pools[i]->hi) == 0)
            pools_ok = false;
        if (sz == 0 && initial_sizes[i] > 0) pools_ok = false; // zone merged away
    }

    std::vector<std::size_t> cuts; // end index of each bin, ascending
    cut_pool(neg_tail, cuts);
    cut_pool(neg_sh, cuts);
    cut_pool(neg_core, cuts);
    cut_pool(pos_core, cuts);
    cut_pool(pos_sh, cuts);
    cut_pool(pos_tail, cuts);

    // Absorb ties: a cut between equal values would give a zero-width bin,
    // so such cuts slide past the run of duplicates.
    std::vector<std::size_t> clean;
    clean.reserve(cuts.size());
    for (std::size_t c : cuts) {
        while (c < n && s[c] == s[c - 1]) ++c;
        if (!clean.empty() && c <= clean.back()) continue; // bin swallowed
        clean.push_back(c);
    }
    if (clean.back() != n) clean.push_back(n);
    if (clean.size() != cuts.size()) pools_ok = false;

    BinGrid grid;
    grid.sigma = sigma;
    grid.mu = mu;
    const std::size_t bins = clean.size();
    grid.edges.resize(bins + 1);
    grid.centers.resize(bins);
    grid.counts.resize(bins);
    grid.zones.resize(bins);
    grid.edges[0] = s.front();
    grid.edges[bins] = s.back();
    for (std::size_t i = 0; i + 1 < bins; ++i)
        grid.edges[i + 1] = 0.5 * (s[clean[i] - 1] + s[clean[i]]);

    std::size_t begin = 0;
    for (std::size_t i = 0; i < bins; ++i) {
        grid.counts[i] = clean[i] - begin;
        begin = clean[i];
        grid.centers[i] = 0.5 * (grid.edges[i] + grid.edges[i + 1]);
        const double d = std::fabs(grid.centers[i] - mu);
        grid.zones[i] =
            (d < sigma) ? Zone::Core : (d < 2.0 * sigma) ? Zone::Shoulder : Zone::Tail;
    }

    // Final audit: every bin's occupancy inside its labelled zone's range.
    grid.targets_met = pools_ok;
    for (std::size_t i = 0; i < bins; ++i) {
        std::size_t lo = targets.core_min;
        std::size_t hi = targets.core_max;
        if (grid.zones[i] == Zone::Shoulder) {
            lo = targets.shoulder_min;
            hi = targets.shoulder_max;
        } else if (grid.zones[i] == Zone::Tail) {
            lo = targets.tail_min;
            hi = targets.tail_max;
        }
        if (grid.counts[i] < lo || grid.counts[i] > hi) grid.targets_met = false;
    }
    return grid;
}

int find_bin(const BinGrid& grid, double x) {
    if (x < grid.edges.front() || x > grid.edges.back()) return -1;
    if (x == grid.edges.back())
        return static_cast<int>(grid.centers.size()) - 1; // last bin closed
    const auto it = std::upper_bound(grid.edges.begin(), grid.edges.end(), x);
    return static_cast<int>(it - grid.edges.begin()) - 1;
}

KdeResult kde(std::span<const double> x, KdeKernel kernel,
              std::optional<double> bandwidth) {
    const std::size_t n = x.size();
    if (n < 10) throw std::invalid_argument("kde: need at least 10 samples");

    double h;
    if (bandwidth) {
        h = *bandwidth;
        if (!(h > 0.0)) throw std::invalid_argument("kde: bandwidth must be positive");
    } else {
        const double s = stats::stddev(x);
        const double spread = std::min(s, stats::iqr(x) / 1.34);
        if (!(spread > 0.0))
            throw std::runtime_error("kde: zero dispersion with automatic bandwidth");
        h = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
    }

    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it - 3.0 * h;
    const double hi = *hi_it + 3.0 * h;

    KdeResult out;
    out.bandwidth = h;
    constexpr std::size_t kGridPoints = 512;
    out.grid.resize(kGridPoints);
    out.density.assign(kGridPoints, 0.0);
    const double step = (hi - lo) / static_cast<double>(kGridPoints - 1);
    for (std::size_t g = 0; g < kGridPoints; ++g)
        out.grid[g] = lo + static_cast<double>(g) * step;

    const double norm = 1.0 / (static_cast<double>(n) * h);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t g = 0; g < static_cast<std::ptrdiff_t>(kGridPoints); ++g) {
        const double xg = out.grid[static_cast<std::size_t>(g)];
        double acc = 0.0;
        if (kernel == KdeKernel::Epanechnikov) {
            for (double xi : x) {
                const double u = (xg - xi) / h;
                if (std::fabs(u) <= 1.0) acc += 0.75 * (1.0 - u * u);
            }
        } else {
            for (double xi : x) {
                const double u = (xg - xi) / h;
                acc += std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI);
            }
        }
        out.density[static_cast<std::size_t>(g)] = acc * norm;
    }
    return out;
}

} // namespace jdkm::binning

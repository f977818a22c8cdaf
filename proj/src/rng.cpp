#include "jdkm/rng.hpp"

#include <cmath>

#include "jdkm/special.hpp"

namespace jdkm::rng {

namespace {

// Weyl increment of the splitmix64 sequence.
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

} // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

Stream::Stream(std::uint64_t seed, Role role) noexcept
    // Two mixing rounds decorrelate the (seed, role) lattice.
    : base_(mix64(mix64(seed + kGamma) ^
                  mix64(static_cast<std::uint64_t>(role) * kGamma))) {}

std::uint64_t Stream::bits_at(std::uint64_t index) const noexcept {
    return mix64(base_ + (index + 1) * kGamma);
}

std::uint64_t Stream::bits() noexcept { return bits_at(cursor_++); }

double Stream::uniform() noexcept {
    // 53-bit mantissa, shifted off zero: strictly inside (0, 1).
    return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53;
}

double Stream::normal() noexcept { return special::norm_quantile(uniform()); }

int Stream::poisson(double mu) noexcept {
    const double u = uniform();
    double p = std::exp(-mu);
    double cum = p;
    int k = 0;
    while (u > cum && k < 1000) {
        ++k;
        p *= mu / k;
        cum += p;
    }
    return k;
}

} // namespace jdkm::rng

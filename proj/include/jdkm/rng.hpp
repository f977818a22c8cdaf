#pragma once

// Counter-based random streams. Every draw is a pure function of
// (seed, role, index), so streams never interact: adding a new role, or
// drawing more from one stream, leaves every other stream's output intact.
// This is what makes seeded regression tests stable across code changes.

#include <cstdint>

namespace jdkm::rng {

// Stream roles. Values are arbitrary but frozen: changing them changes
// every seeded sequence in the test suite.
enum class Role : std::uint64_t {
    Wiener = 1,
    PoissonCount = 2,
    JumpSize = 3,
    Sampler = 4,
    Generic = 5,
};

// splitmix64 finalizer; bijective on 64-bit words.
[[nodiscard]] std::uint64_t mix64(std::uint64_t z) noexcept;

class Stream {
public:
    Stream(std::uint64_t seed, Role role) noexcept;

    // Raw 64-bit word at the cursor; advances the cursor.
    std::uint64_t bits() noexcept;

    // Uniform on the open interval (0, 1).
    double uniform() noexcept;

    // Standard normal via inverse-CDF transform (one uniform per draw).
    double normal() noexcept;

    // Exact Poisson(mu) by cumulative inversion (one uniform per draw).
    // Intended for small mu; cost grows with the returned count.
    int poisson(double mu) noexcept;

    // Random word at an absolute index without moving the cursor.
    [[nodiscard]] std::uint64_t bits_at(std::uint64_t index) const noexcept;

private:
    std::uint64_t base_;
    std::uint64_t cursor_ = 0;
};

} // namespace jdkm::rng

#pragma once

#include <cstdint>
#include <optional>

namespace cvqkd {

/// Counter-based pseudo random generator.
///
/// The i-th 64-bit output of a stream is a pure function of (key, i): the
/// SplitMix64 finalizer applied to `key + (i + 1) * golden`. Streams are
/// therefore reproducible bit-for-bit, and independent substreams can be
/// derived from a parent key without touching the parent's counter, which
/// keeps parallel Monte Carlo runs independent of scheduling.
///
/// Gaussian draws use Box-Muller and always consume exactly two uniforms per
/// generated pair.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t position() const noexcept { return counter_; }

    std::uint64_t next_u64() noexcept;

    /// Uniform on [0, 1) with 53 bits of resolution.
    double uniform() noexcept;

    /// Uniform integer on [0, bound). `bound` must be non-zero.
    std::uint64_t uniform_index(std::uint64_t bound) noexcept;

    bool coin() noexcept { return (next_u64() >> 63) != 0; }

    double standard_normal() noexcept;

    /// Independent stream keyed on (this stream's key, index).
    Rng substream(std::uint64_t index) const noexcept;

private:
    Rng(std::uint64_t seed, std::uint64_t key) noexcept;

    std::uint64_t seed_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    std::optional<double> spare_;
};

/// SplitMix64 output mix.
std::uint64_t mix64(std::uint64_t z) noexcept;

}  // namespace cvqkd

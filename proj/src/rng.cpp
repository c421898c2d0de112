#include "cvqkd/rng.hpp"

#include <cmath>
#include <numbers>

namespace cvqkd {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kStreamSalt = 0xd1b54a32d192ed03ULL;
}  // namespace

std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) noexcept : Rng(seed, mix64(seed)) {}

Rng::Rng(std::uint64_t seed, std::uint64_t key) noexcept : seed_(seed), key_(key) {}

std::uint64_t Rng::next_u64() noexcept {
    ++counter_;
    return mix64(key_ + counter_ * kGolden);
}

double Rng::uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

__extension__ using u128 = unsigned __int128;

std::uint64_t Rng::uniform_index(std::uint64_t bound) noexcept {
    // Lemire's multiply-shift with rejection of the biased low region.
    std::uint64_t x = next_u64();
    auto m = static_cast<u128>(x) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            x = next_u64();
            m = static_cast<u128>(x) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double Rng::standard_normal() noexcept {
    if (spare_) {
        const double z = *spare_;
        spare_.reset();
        return z;
    }
    // 1 - u lies in (0, 1], so the logarithm is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    return radius * std::cos(angle);
}

Rng Rng::substream(std::uint64_t index) const noexcept {
    return Rng(seed_, mix64(key_ ^ mix64(index + kStreamSalt)));
}

}  // namespace cvqkd

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cvqkd {

/// Packed bit string. Bit i lives in word i / 64 at position i % 64.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t size) : words_((size + 63) / 64, 0), size_(size) {}

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }

    bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }
    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    void push_back(bool v);

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    /// Bits packed MSB-first into bytes, the last byte zero-padded.
    std::vector<std::uint8_t> to_bytes() const;
    static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t bits);

    /// Lowercase hex of to_bytes().
    std::string to_hex() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

}  // namespace cvqkd

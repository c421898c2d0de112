#include "cvqkd/bitstring.hpp"

#include <stdexcept>

namespace cvqkd {

void BitString::push_back(bool v) {
    if ((size_ & 63) == 0) words_.push_back(0);
    ++size_;
    set(size_ - 1, v);
}

std::vector<std::uint8_t> BitString::to_bytes() const {
    std::vector<std::uint8_t> out((size_ + 7) / 8, 0);
    for (std::size_t i = 0; i < size_; ++i) {
        if (get(i)) out[i / 8] |= static_cast<std::uint8_t>(0x80u >> (i % 8));
    }
    return out;
}

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t bits) {
    if (bytes.size() * 8 < bits) {
        throw std::invalid_argument("BitString::from_bytes: not enough bytes for the bit count");
    }
    BitString out(bits);
    for (std::size_t i = 0; i < bits; ++i) {
        out.set(i, (bytes[i / 8] >> (7 - i % 8)) & 1u);
    }
    return out;
}

std::string BitString::to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    for (std::uint8_t b : to_bytes()) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0f]);
    }
    return out;
}

}  // namespace cvqkd

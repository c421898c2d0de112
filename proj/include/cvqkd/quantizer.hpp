#pragma once

#include "cvqkd/bitstring.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cvqkd {

/// Continuous values mapped to integers floor(n * value).
struct QuantizedKey {
    std::vector<std::int64_t> symbols;
    int quantizer_n = 1;
    int bits_per_symbol = 1;  ///< two's-complement width covering all symbols
};

/// Smallest two's-complement width that represents every value in [lo, hi].
int twos_complement_width(std::int64_t lo, std::int64_t hi) noexcept;

/// Throws std::invalid_argument for n < 1 or non-finite values.
QuantizedKey quantize(std::span<const double> values, int n);

/// Plug-in Shannon entropy of the symbol histogram, in bits per symbol.
double symbol_entropy(std::span<const std::int64_t> symbols);

/// Bit `plane` (0 = least significant) of `symbol` in two's complement.
inline bool symbol_bit(std::int64_t symbol, int plane) noexcept {
    return (static_cast<std::uint64_t>(symbol) >> plane) & 1u;
}

/// Rebuilds a symbol from its low `width` two's-complement bits.
std::int64_t sign_extend(std::uint64_t bits, int width) noexcept;

/// Each symbol's `width` bits, most significant first, concatenated.
BitString serialize_symbols(std::span<const std::int64_t> symbols, int width);

}  // namespace cvqkd

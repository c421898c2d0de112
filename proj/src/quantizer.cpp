#include "cvqkd/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cvqkd {

int twos_complement_width(std::int64_t lo, std::int64_t hi) noexcept {
    int w = 1;
    while (w < 64) {
        const std::int64_t min = -(std::int64_t{1} << (w - 1));
        const std::int64_t max = (std::int64_t{1} << (w - 1)) - 1;
        if (lo >= min && hi <= max) break;
        ++w;
    }
    return w;
}

QuantizedKey quantize(std::span<const double> values, int n) {
    if (n < 1) throw std::invalid_argument("quantize: n must be at least 1");
    QuantizedKey q;
    q.quantizer_n = n;
    q.symbols.reserve(values.size());
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("quantize: non-finite value");
        q.symbols.push_back(static_cast<std::int64_t>(std::floor(static_cast<double>(n) * v)));
    }
    if (!q.symbols.empty()) {
        const auto [lo, hi] = std::minmax_element(q.symbols.begin(), q.symbols.end());
        q.bits_per_symbol = twos_complement_width(*lo, *hi);
    }
    return q;
}

double symbol_entropy(std::span<const std::int64_t> symbols) {
    if (symbols.empty()) return 0.0;
    std::map<std::int64_t, std::size_t> counts;
    for (auto s : symbols) ++counts[s];
    const auto total = static_cast<double>(symbols.size());
    double h = 0.0;
    for (const auto& [_, c] : counts) {
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

std::int64_t sign_extend(std::uint64_t bits, int width) noexcept {
    if (width >= 64) return static_cast<std::int64_t>(bits);
    const std::uint64_t mask = (std::uint64_t{1} << width) - 1;
    bits &= mask;
    const std::uint64_t sign = std::uint64_t{1} << (width - 1);
    return static_cast<std::int64_t>((bits ^ sign) - sign);
}

BitString serialize_symbols(std::span<const std::int64_t> symbols, int width) {
    BitString out;
    for (auto s : symbols) {
        for (int b = width - 1; b >= 0; --b) out.push_back(symbol_bit(s, b));
    }
    return out;
}

}  // namespace cvqkd

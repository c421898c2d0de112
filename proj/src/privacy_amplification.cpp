#include "cvqkd/privacy_amplification.hpp"

#include "cvqkd/rng.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

namespace cvqkd {

BitString toeplitz_hash(const BitString& input, std::size_t output_bits, std::uint64_t seed) {
    const std::size_t m = input.size();
    BitString out(output_bits);
    if (m == 0 || output_bits == 0) return out;

    // With the input reversed, T[i][j] in[j] = s[i + k] rev[k]: row i is the
    // window of s starting at bit i.
    BitString reversed(m);
    for (std::size_t j = 0; j < m; ++j) reversed.set(m - 1 - j, input.get(j));
    const auto rev = reversed.words();

    const std::size_t seed_bits = m + output_bits - 1;
    std::vector<std::uint64_t> s((seed_bits + 63) / 64 + 1, 0);
    Rng rng(seed);
    for (std::size_t w = 0; w + 1 < s.size(); ++w) s[w] = rng.next_u64();

    for (std::size_t i = 0; i < output_bits; ++i) {
        const std::size_t word = i >> 6;
        const unsigned shift = i & 63;
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < rev.size(); ++k) {
            std::uint64_t window = s[word + k] >> shift;
            if (shift != 0) window |= s[word + k + 1] << (64 - shift);
            acc ^= window & rev[k];
        }
        out.set(i, std::popcount(acc) & 1);
    }
    return out;
}

std::size_t final_key_length(std::size_t reconciled_bits, const AmplificationInputs& in) {
    const auto n = static_cast<double>(in.symbols);
    const double entropy_term =
        std::floor(n * (in.alice_entropy_bits - in.eve_info_bits)) - static_cast<double>(in.leakage_bits);
    const double bound_term = std::floor(n * (in.i_bob_bits - in.eve_info_bits));
    const double length = std::min(entropy_term, bound_term) - static_cast<double>(in.security_margin);
    if (!(length > 0.0)) return 0;
    return std::min(reconciled_bits, static_cast<std::size_t>(length));
}

AmplifiedKey privacy_amplify(const BitString& reconciled, const AmplificationInputs& in,
                             std::uint64_t hash_seed) {
    const std::size_t length = final_key_length(reconciled.size(), in);
    if (length == 0) return {BitString{}, true};
    return {toeplitz_hash(reconciled, length, hash_seed), false};
}

}  // namespace cvqkd

#pragma once

#include "cvqkd/bitstring.hpp"

#include <cstddef>
#include <cstdint>

namespace cvqkd {

/// Toeplitz-matrix universal hash: output bit i is the parity of
/// T[i][j] & input[j] with T[i][j] = s[i - j + M - 1], where the
/// M + output_bits - 1 bits s are expanded from `seed`.
BitString toeplitz_hash(const BitString& input, std::size_t output_bits, std::uint64_t seed);

struct AmplificationInputs {
    std::size_t symbols = 0;
    double alice_entropy_bits = 0.0;  ///< entropy of Alice's symbols, per symbol
    double i_bob_bits = 0.0;          ///< Bob's measured information, per symbol
    double eve_info_bits = 0.0;       ///< bound on Eve's information, per symbol
    std::uint64_t leakage_bits = 0;   ///< reconciliation bits disclosed by Alice
    std::uint64_t security_margin = 32;
};

/// Secret length for a reconciled string of `reconciled_bits` bits:
///
///   min( floor(N (H_A - I_E)) - leakage,  floor(N (I_B - I_E)) ) - margin
///
/// clamped to [0, reconciled_bits]. The first term is what remains of
/// Alice's entropy after Eve's information and the public reconciliation
/// messages; the second caps the key at the mutual-information bound.
std::size_t final_key_length(std::size_t reconciled_bits, const AmplificationInputs& in);

struct AmplifiedKey {
    BitString key;
    bool aborted = false;  ///< no secret length remained
};

AmplifiedKey privacy_amplify(const BitString& reconciled, const AmplificationInputs& in,
                             std::uint64_t hash_seed);

}  // namespace cvqkd

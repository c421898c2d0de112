#pragma once

#include "cvqkd/bitstring.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace cvqkd {

/// Message kinds of the reconciliation exchange. Tags below 0x80 are sent by
/// Alice and carry information about her key; tags from 0x80 up are Bob's
/// replies.
enum class StageTag : std::uint8_t {
    Audit = 0x01,          ///< 64 random-subset parities of one bit plane; block = plane
    BlockParity = 0x02,    ///< parities of every block of a Cascade pass; block = pass
    Bisect = 0x03,         ///< one half-block parity during binary search; block = block
    PlaneDisclosure = 0x04,  ///< a whole bit plane sent in the clear; block = plane
    MismatchReport = 0x81,   ///< Bob's bitmap of blocks whose parity disagreed; block = pass
};

constexpr bool sent_by_alice(StageTag tag) noexcept {
    return (static_cast<std::uint8_t>(tag) & 0x80u) == 0;
}

struct TranscriptMessage {
    StageTag stage;
    std::uint32_t block;
    BitString payload;

    friend bool operator==(const TranscriptMessage&, const TranscriptMessage&) = default;
};

/// Ordered record of the public reconciliation exchange.
///
/// Wire form, per message: stage tag (1 byte), block index (4 bytes,
/// big-endian), payload length in bits (4 bytes, big-endian), payload bits
/// packed MSB-first and zero-padded to a whole byte.
class Transcript {
public:
    void append(StageTag stage, std::uint32_t block, BitString payload);

    std::span<const TranscriptMessage> messages() const noexcept { return messages_; }

    /// Payload bits sent by Alice, i.e. the reconciliation leakage.
    std::uint64_t leaked_bits() const noexcept;
    std::uint64_t bits_with_tag(StageTag tag) const noexcept;

    std::vector<std::uint8_t> serialize() const;
    /// Throws std::invalid_argument on truncated input or unknown tags.
    static Transcript deserialize(std::span<const std::uint8_t> bytes);

    friend bool operator==(const Transcript&, const Transcript&) = default;

private:
    std::vector<TranscriptMessage> messages_;
};

}  // namespace cvqkd

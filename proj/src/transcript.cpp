#include "cvqkd/transcript.hpp"

#include <stdexcept>

namespace cvqkd {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t at) {
    return (std::uint32_t{in[at]} << 24) | (std::uint32_t{in[at + 1]} << 16) |
           (std::uint32_t{in[at + 2]} << 8) | std::uint32_t{in[at + 3]};
}

bool known_tag(std::uint8_t t) {
    switch (static_cast<StageTag>(t)) {
        case StageTag::Audit:
        case StageTag::BlockParity:
        case StageTag::Bisect:
        case StageTag::PlaneDisclosure:
        case StageTag::MismatchReport:
            return true;
    }
    return false;
}

}  // namespace

void Transcript::append(StageTag stage, std::uint32_t block, BitString payload) {
    messages_.push_back({stage, block, std::move(payload)});
}

std::uint64_t Transcript::leaked_bits() const noexcept {
    std::uint64_t total = 0;
    for (const auto& m : messages_) {
        if (sent_by_alice(m.stage)) total += m.payload.size();
    }
    return total;
}

std::uint64_t Transcript::bits_with_tag(StageTag tag) const noexcept {
    std::uint64_t total = 0;
    for (const auto& m : messages_) {
        if (m.stage == tag) total += m.payload.size();
    }
    return total;
}

std::vector<std::uint8_t> Transcript::serialize() const {
    std::vector<std::uint8_t> out;
    for (const auto& m : messages_) {
        out.push_back(static_cast<std::uint8_t>(m.stage));
        put_u32(out, m.block);
        put_u32(out, static_cast<std::uint32_t>(m.payload.size()));
        const auto bytes = m.payload.to_bytes();
        out.insert(out.end(), bytes.begin(), bytes.end());
    }
    return out;
}

Transcript Transcript::deserialize(std::span<const std::uint8_t> bytes) {
    Transcript t;
    std::size_t at = 0;
    while (at < bytes.size()) {
        if (bytes.size() - at < 9) throw std::invalid_argument("transcript: truncated header");
        const std::uint8_t tag = bytes[at];
        if (!known_tag(tag)) throw std::invalid_argument("transcript: unknown stage tag");
        const std::uint32_t block = get_u32(bytes, at + 1);
        const std::uint32_t bits = get_u32(bytes, at + 5);
        at += 9;
        const std::size_t nbytes = (static_cast<std::size_t>(bits) + 7) / 8;
        if (bytes.size() - at < nbytes) throw std::invalid_argument("transcript: truncated payload");
        t.append(static_cast<StageTag>(tag), block, BitString::from_bytes(bytes.subspan(at, nbytes), bits));
        at += nbytes;
    }
    return t;
}

}  // namespace cvqkd

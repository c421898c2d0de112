#include "cvqkd/bitstring.hpp"
#include "cvqkd/transcript.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace cvqkd;

namespace {
BitString bits(std::initializer_list<int> v) {
    BitString b;
    for (int x : v) b.push_back(x != 0);
    return b;
}
}  // namespace

TEST(BitString, SetGetFlipPush) {
    BitString b(130);
    EXPECT_EQ(b.size(), 130u);
    b.set(0, true);
    b.set(64, true);
    b.set(129, true);
    b.flip(64);
    EXPECT_TRUE(b.get(0));
    EXPECT_FALSE(b.get(64));
    EXPECT_TRUE(b.get(129));
    b.push_back(true);
    EXPECT_EQ(b.size(), 131u);
    EXPECT_TRUE(b.get(130));
    EXPECT_TRUE(BitString().empty());
}

TEST(BitString, BytesAreMsbFirstAndRoundTrip) {
    const BitString b = bits({1, 0, 1, 0, 0, 0, 0, 1, 1});
    EXPECT_EQ(b.to_bytes(), (std::vector<std::uint8_t>{0xa1, 0x80}));
    EXPECT_EQ(b.to_hex(), "a180");
    const auto bytes = b.to_bytes();
    EXPECT_EQ(BitString::from_bytes(bytes, 9), b);
    EXPECT_EQ(BitString().to_hex(), "");
}

TEST(BitString, EqualityIncludesLength) {
    EXPECT_NE(bits({1, 0}), bits({1, 0, 0}));
    EXPECT_EQ(bits({1, 0}), bits({1, 0}));
}

TEST(Transcript, WireLayout) {
    Transcript t;
    t.append(StageTag::BlockParity, 0x01020304u, bits({1, 1, 0}));
    const auto bytes = t.serialize();
    const std::vector<std::uint8_t> expected{0x02, 0x01, 0x02, 0x03, 0x04, 0x00, 0x00, 0x00, 0x03, 0xc0};
    EXPECT_EQ(bytes, expected);
}

TEST(Transcript, RoundTripsAllTags) {
    Transcript t;
    t.append(StageTag::Audit, 0, BitString(64));
    t.append(StageTag::BlockParity, 1, bits({1, 0, 1}));
    t.append(StageTag::MismatchReport, 1, bits({0, 0, 1}));
    t.append(StageTag::Bisect, 7, bits({1}));
    t.append(StageTag::PlaneDisclosure, 2, bits({}));
    EXPECT_EQ(Transcript::deserialize(t.serialize()), t);
}

TEST(Transcript, LeakageCountsOnlyAlice) {
    Transcript t;
    t.append(StageTag::Audit, 0, BitString(64));
    t.append(StageTag::BlockParity, 0, BitString(10));
    t.append(StageTag::MismatchReport, 0, BitString(10));
    t.append(StageTag::Bisect, 3, BitString(1));
    EXPECT_EQ(t.leaked_bits(), 75u);
    EXPECT_EQ(t.bits_with_tag(StageTag::MismatchReport), 10u);
    EXPECT_EQ(t.bits_with_tag(StageTag::Audit), 64u);
    EXPECT_TRUE(sent_by_alice(StageTag::Bisect));
    EXPECT_FALSE(sent_by_alice(StageTag::MismatchReport));
}

TEST(Transcript, RejectsMalformedInput) {
    Transcript t;
    t.append(StageTag::Bisect, 1, bits({1}));
    auto bytes = t.serialize();
    EXPECT_THROW(Transcript::deserialize(std::vector<std::uint8_t>(bytes.begin(), bytes.end() - 1)),
                 std::invalid_argument);
    EXPECT_THROW(Transcript::deserialize(std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 5)),
                 std::invalid_argument);
    bytes[0] = 0x7f;
    EXPECT_THROW(Transcript::deserialize(bytes), std::invalid_argument);
    EXPECT_TRUE(Transcript::deserialize(std::vector<std::uint8_t>{}).messages().empty());
}

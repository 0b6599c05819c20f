#include <gtest/gtest.h>

#include <cstdint>
#include <filesystem>
#include <vector>

#include "fairbits/bit_source.hpp"
#include "fairbits/errors.hpp"

using namespace fairbits;

namespace {

std::vector<bool> bits(const char* s) { return parse_tape(s); }

}  // namespace

TEST(ReplaySource, EchoesTape) {
  ReplaySource src(bits("101"));
  EXPECT_TRUE(src.next_bit());
  EXPECT_FALSE(src.next_bit());
  EXPECT_TRUE(src.next_bit());
  EXPECT_EQ(src.consumed(), 3U);
  EXPECT_THROW(src.next_bit(), TapeExhausted);
}

TEST(ReplaySource, ExhaustedTapeDoesNotCount) {
  ReplaySource src(bits(""));
  EXPECT_THROW(src.next_bit(), TapeExhausted);
  EXPECT_EQ(src.consumed(), 0U);
}

TEST(Tape, ParseIgnoresWhitespaceAndRejectsOtherCharacters) {
  EXPECT_EQ(parse_tape("1 0\n1\t1"), (std::vector<bool>{true, false, true, true}));
  EXPECT_THROW(parse_tape("10x"), InvalidInput);
}

TEST(Tape, FileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "fairbits_tape_roundtrip.txt";
  std::vector<bool> tape;
  for (int i = 0; i < 200; ++i) tape.push_back((i * 7 + i / 3) % 3 == 0);
  write_tape_file(path, tape);
  EXPECT_EQ(read_tape_file(path), tape);
  std::filesystem::remove(path);
}

TEST(SeededSource, SameSeedSameBits) {
  SeededSource a(0x1234);
  SeededSource b(0x1234);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(a.next_bit(), b.next_bit());
  EXPECT_EQ(a.consumed(), 64U);
}

TEST(SeededSource, ReadsWordsLeastSignificantBitFirst) {
  SplitMix64 gen(42);
  const std::uint64_t w = gen();
  SeededSource src(42);
  for (int i = 0; i < 64; ++i) EXPECT_EQ(src.next_bit(), ((w >> i) & 1U) != 0) << i;
}

TEST(SeededSource, FractionOfOnesIsBalanced) {
  SeededSource src(7);
  std::uint64_t ones = 0;
  constexpr std::uint64_t n = 1000000;
  for (std::uint64_t i = 0; i < n; ++i) ones += src.next_bit() ? 1 : 0;
  EXPECT_NEAR(static_cast<double>(ones) / n, 0.5, 0.002);
}

TEST(SplitMix64, ReferenceOutputs) {
  // First outputs for seed 1234567 from the reference C implementation.
  SplitMix64 gen(1234567);
  EXPECT_EQ(gen(), 6457827717110365317ULL);
  EXPECT_EQ(gen(), 3203168211198807973ULL);
  EXPECT_EQ(gen(), 9817491932198370423ULL);
}

TEST(SplitSeed, StreamsDiffer) {
  EXPECT_NE(split_seed(1, 0), split_seed(1, 1));
  EXPECT_NE(split_seed(1, 0), split_seed(2, 0));
  EXPECT_EQ(split_seed(9, 3), split_seed(9, 3));
}

TEST(RecycleQueue, FifoOrder) {
  RecycleQueue q;
  push_recycled(q, {});
  EXPECT_TRUE(q.empty());
  push_recycled(q, bits("10"));
  EXPECT_TRUE(q.pop());
  EXPECT_FALSE(q.pop());
  EXPECT_TRUE(q.empty());
}

TEST(RecycleQueue, PushesConcatenate) {
  RecycleQueue a;
  RecycleQueue b;
  push_recycled(a, bits("1"));
  push_recycled(a, bits("0"));
  push_recycled(b, bits("10"));
  while (!a.empty()) EXPECT_EQ(a.pop(), b.pop());
  EXPECT_TRUE(b.empty());
}

TEST(RecycleQueue, TracksMaxDepth) {
  RecycleQueue q;
  push_recycled(q, bits("101"));
  q.pop();
  push_recycled(q, bits("1"));
  EXPECT_EQ(q.max_depth(), 3U);
}

TEST(FetchBit, QueueThenFallback) {
  FetchBitSource<ReplaySource> src(ReplaySource(bits("0")));
  push_recycled(src.queue(), bits("1"));
  EXPECT_TRUE(fetch_bit(src));
  EXPECT_EQ(src.fresh_consumed(), 0U);
  EXPECT_FALSE(fetch_bit(src));
  EXPECT_EQ(src.fresh_consumed(), 1U);
  EXPECT_EQ(src.consumed(), 2U);
}

TEST(FetchBit, EmptyQueueMatchesFallback) {
  FetchBitSource<SeededSource> fetch(SeededSource(99));
  SeededSource plain(99);
  for (int i = 0; i < 300; ++i) EXPECT_EQ(fetch_bit(fetch), plain.next_bit());
  EXPECT_EQ(fetch.fresh_consumed(), 300U);
}

TEST(FetchBit, PushedBitsPrecedeTape) {
  FetchBitSource<ReplaySource> src(ReplaySource(bits("1")));
  push_recycled(src.queue(), bits("01"));
  EXPECT_FALSE(fetch_bit(src));
  EXPECT_TRUE(fetch_bit(src));
  EXPECT_TRUE(fetch_bit(src));
  EXPECT_EQ(src.fresh_consumed(), 1U);
}

TEST(AnyBitSource, DispatchesToBothKinds) {
  AnyBitSource replay{ReplaySource(bits("01"))};
  EXPECT_FALSE(replay.next_bit());
  EXPECT_TRUE(replay.next_bit());
  EXPECT_EQ(replay.consumed(), 2U);

  AnyBitSource seeded{SeededSource(5)};
  SeededSource plain(5);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(seeded.next_bit(), plain.next_bit());
}

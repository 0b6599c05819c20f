#pragma once

// Sources of fair coin flips with exact consumption accounting.
//
// Every sampler in the library is a template over the BitSource concept: it
// pulls bits one at a time through next_bit() and reports its cost as the
// difference of consumed() before and after the call.

#include <concepts>
#include <cstdint>
#include <deque>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fairbits/errors.hpp"

namespace fairbits {

template <typename S>
concept BitSource = requires(S& s, const S& cs) {
  { s.next_bit() } -> std::same_as<bool>;
  { cs.consumed() } -> std::convertible_to<std::uint64_t>;
};

// SplitMix64 (Steele, Lea and Flood). The state is the 64-bit seed itself and
// advances by the golden-ratio increment; outputs pass through the standard
// variant-13 finalizer.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t operator()() { return mix(state_ += kGamma); }

  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

 private:
  std::uint64_t state_;
};

// Seed of the independent stream used by trial `stream` of a run seeded with
// `master`. Trials never share a generator, so results do not depend on how
// trials are scheduled across threads.
constexpr std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  return SplitMix64::mix(master + (stream + 1) * SplitMix64::kGamma);
}

// Pseudorandom stand-in for the ideal coin. Words from SplitMix64 are consumed
// least significant bit first.
class SeededSource {
 public:
  explicit SeededSource(std::uint64_t seed) : gen_(seed) {}

  bool next_bit() {
    if (left_ == 0) {
      word_ = gen_();
      left_ = 64;
    }
    const bool bit = (word_ & 1U) != 0;
    word_ >>= 1;
    --left_;
    ++consumed_;
    return bit;
  }

  std::uint64_t consumed() const { return consumed_; }

 private:
  SplitMix64 gen_;
  std::uint64_t word_ = 0;
  unsigned left_ = 0;
  std::uint64_t consumed_ = 0;
};

// Tape text: '0' and '1' characters, whitespace ignored, anything else rejected.
inline std::vector<bool> parse_tape(std::string_view text) {
  std::vector<bool> bits;
  bits.reserve(text.size());
  for (const char c : text) {
    if (c == '0' || c == '1') {
      bits.push_back(c == '1');
    } else if (c != ' ' && c != '\t' && c != '\n' && c != '\r' && c != '\f' && c != '\v') {
      throw InvalidInput(std::string("tape contains invalid character '") + c + "'");
    }
  }
  return bits;
}

inline std::string format_tape(const std::vector<bool>& bits, std::size_t line_width = 64) {
  std::string out;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    out.push_back(bits[i] ? '1' : '0');
    if (line_width != 0 && (i + 1) % line_width == 0) out.push_back('\n');
  }
  if (out.empty() || out.back() != '\n') out.push_back('\n');
  return out;
}

inline std::vector<bool> read_tape_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open tape file " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_tape(text.str());
}

inline void write_tape_file(const std::filesystem::path& path, const std::vector<bool>& bits) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write tape file " + path.string());
  out << format_tape(bits);
}

// Deterministic fixture: replays a fixed tape and fails past its end.
class ReplaySource {
 public:
  ReplaySource() = default;
  explicit ReplaySource(std::vector<bool> tape) : tape_(std::move(tape)) {}
  explicit ReplaySource(std::string_view text) : tape_(parse_tape(text)) {}

  bool next_bit() {
    if (cursor_ >= tape_.size()) throw TapeExhausted();
    ++consumed_;
    return tape_[cursor_++];
  }

  std::uint64_t consumed() const { return consumed_; }
  std::size_t remaining() const { return tape_.size() - cursor_; }
  const std::vector<bool>& tape() const { return tape_; }

 private:
  std::vector<bool> tape_;
  std::size_t cursor_ = 0;
  std::uint64_t consumed_ = 0;
};

// FIFO of recovered bits awaiting reuse.
class RecycleQueue {
 public:
  void push(bool bit) {
    fifo_.push_back(bit);
    if (fifo_.size() > max_depth_) max_depth_ = fifo_.size();
  }

  template <typename Range>
  void push_all(const Range& bits) {
    for (const bool b : bits) push(b);
  }

  bool pop() {
    const bool b = fifo_.front();
    fifo_.pop_front();
    return b;
  }

  bool empty() const { return fifo_.empty(); }
  std::size_t size() const { return fifo_.size(); }
  std::size_t max_depth() const { return max_depth_; }

 private:
  std::deque<bool> fifo_;
  std::size_t max_depth_ = 0;
};

inline void push_recycled(RecycleQueue& queue, const std::vector<bool>& bits) { queue.push_all(bits); }

// FetchBit: drain the recycle queue first, then fall back to fresh bits.
// consumed() counts every fetch (the sampler's cost T); fresh_consumed()
// counts only fallback draws.
template <BitSource Fallback>
class FetchBitSource {
 public:
  explicit FetchBitSource(Fallback fallback) : fallback_(std::move(fallback)) {}

  bool next_bit() {
    if (!queue_.empty()) {
      ++fetched_;
      return queue_.pop();
    }
    const bool b = fallback_.next_bit();
    ++fresh_;
    ++fetched_;
    return b;
  }

  std::uint64_t consumed() const { return fetched_; }
  std::uint64_t fresh_consumed() const { return fresh_; }

  RecycleQueue& queue() { return queue_; }
  const RecycleQueue& queue() const { return queue_; }
  Fallback& fallback() { return fallback_; }
  const Fallback& fallback() const { return fallback_; }

 private:
  Fallback fallback_;
  RecycleQueue queue_;
  std::uint64_t fetched_ = 0;
  std::uint64_t fresh_ = 0;
};

template <BitSource Fallback>
bool fetch_bit(FetchBitSource<Fallback>& source) {
  return source.next_bit();
}

// Runtime choice between a seeded generator and a replay tape.
class AnyBitSource {
 public:
  explicit AnyBitSource(SeededSource s) : impl_(std::move(s)) {}
  explicit AnyBitSource(ReplaySource s) : impl_(std::move(s)) {}

  bool next_bit() {
    return std::visit([](auto& s) { return s.next_bit(); }, impl_);
  }
  std::uint64_t consumed() const {
    return std::visit([](const auto& s) { return s.consumed(); }, impl_);
  }

 private:
  std::variant<SeededSource, ReplaySource> impl_;
};

static_assert(BitSource<SeededSource>);
static_assert(BitSource<ReplaySource>);
static_assert(BitSource<FetchBitSource<SeededSource>>);
static_assert(BitSource<AnyBitSource>);

}  // namespace fairbits

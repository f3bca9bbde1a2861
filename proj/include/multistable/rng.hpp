#pragma once

#include <array>
#include <cstdint>

namespace multistable {

/// Philox4x32 with 10 rounds: a keyed bijection on 128-bit counter blocks.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The 128-bit key selects the stream, the
/// counter the position inside it; (level, cell) records which substream the
/// key was derived for. Streams are plain values: copying one and drawing from
/// both copies yields the same numbers.
///
/// Block k of a stream is philox4x32_10((k_lo, k_hi, key1_lo, key1_hi), key0).
struct RngStream {
  std::array<std::uint64_t, 2> key{};
  std::uint64_t counter = 0;
  std::int64_t level = -1;
  std::int64_t cell = 0;

  /// Seed expansion: key = (splitmix64 step 1, splitmix64 step 2) from `seed`.
  static RngStream from_seed(std::uint64_t seed);

  /// Next 128-bit block as two 64-bit words; advances the counter by one.
  std::array<std::uint64_t, 2> next_block();
  /// Uniform on the open interval (0, 1) with 52 random bits.
  double next_uniform();

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// Maps a 64-bit word to a uniform in (0, 1): ((x >> 12) + 0.5) 2^-52. With 53 bits
/// the largest value would round up to 1.
double to_open_unit(std::uint64_t x);

/// Child stream for cell `cell` at dyadic level `level`. The child key is a
/// Philox image of (parent key, level, cell); the child counter starts at 0.
RngStream derive_stream(const RngStream& master, std::int64_t level, std::int64_t cell);

/// Substream tags used for non-cell derivations.
inline constexpr std::int64_t kPathTag = -1;
inline constexpr std::int64_t kBootstrapTag = -2;
inline constexpr std::int64_t kCaseTag = -3;

std::uint64_t splitmix64(std::uint64_t& state);

}  // namespace multistable

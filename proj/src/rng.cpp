#include "multistable/rng.hpp"

namespace multistable {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

inline std::uint32_t lo32(std::uint64_t x) { return static_cast<std::uint32_t>(x); }
inline std::uint32_t hi32(std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); }
inline std::uint64_t join(std::uint32_t lo, std::uint32_t hi) { return static_cast<std::uint64_t>(hi) << 32 | lo; }

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, c[0], hi0, lo0);
    mulhilo(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

RngStream RngStream::from_seed(std::uint64_t seed) {
  RngStream s;
  std::uint64_t state = seed;
  s.key[0] = splitmix64(state);
  s.key[1] = splitmix64(state);
  return s;
}

std::array<std::uint64_t, 2> RngStream::next_block() {
  const auto out = philox4x32_10({lo32(counter), hi32(counter), lo32(key[1]), hi32(key[1])}, {lo32(key[0]), hi32(key[0])});
  ++counter;
  return {join(out[0], out[1]), join(out[2], out[3])};
}

double to_open_unit(std::uint64_t x) { return (static_cast<double>(x >> 12) + 0.5) * 0x1.0p-52; }

double RngStream::next_uniform() { return to_open_unit(next_block()[0]); }

RngStream derive_stream(const RngStream& master, std::int64_t level, std::int64_t cell) {
  const auto c = static_cast<std::uint64_t>(cell);
  const auto l = static_cast<std::uint64_t>(level);
  const auto b1 = philox4x32_10({lo32(c), hi32(c), lo32(l), hi32(l)}, {lo32(master.key[0]), hi32(master.key[0])});
  const auto b2 = philox4x32_10({lo32(master.key[1]), hi32(master.key[1]), b1[0], b1[1]}, {b1[2], b1[3]});
  RngStream child;
  child.key = {join(b2[0], b2[1]), join(b2[2], b2[3])};
  child.counter = 0;
  child.level = level;
  child.cell = cell;
  return child;
}

}  // namespace multistable

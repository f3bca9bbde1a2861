#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace multistable {

/// Exact accumulator for sums of doubles and of products of two doubles.
///
/// The running total is held as a fixed-point number spanning every finite
/// double exponent (a long accumulator), so additions never round and the
/// result is independent of summation order. to_double() returns the
/// correctly rounded total (round-half-even) unless it falls in the subnormal
/// range, where a second rounding may occur.
class ExactSum {
 public:
  ExactSum() = default;

  void add(double x);
  /// Adds x * y exactly (two-product via fma), barring underflow of the
  /// rounding error below the subnormal range.
  void add_product(double x, double y);
  ExactSum& operator+=(const ExactSum& other);
  ExactSum operator-() const;

  double to_double() const;
  bool is_zero() const;

  friend ExactSum operator+(ExactSum lhs, const ExactSum& rhs) { return lhs += rhs; }
  friend bool operator==(const ExactSum& lhs, const ExactSum& rhs);

 private:
  static constexpr int kLimbBits = 32;
  static constexpr int kLimbs = 72;
  static constexpr int kMinExponent = -1152;  // weight of bit 0 of limb 0

  void normalize();
  void maybe_normalize();

  std::array<std::int64_t, kLimbs> limbs_{};
  std::uint32_t pending_ = 0;
};

}  // namespace multistable

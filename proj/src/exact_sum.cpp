#include "multistable/exact_sum.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "multistable/error.hpp"

namespace multistable {

namespace {

__extension__ typedef unsigned __int128 u128;

}  // namespace

void ExactSum::add(double x) {
  if (x == 0.0) return;
  if (!std::isfinite(x)) throw DomainError("ExactSum cannot accumulate a non-finite value");
  int e = 0;
  const double m = std::frexp(x, &e);
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));  // |mant| < 2^53, exact
  const int lsb = e - 53 - kMinExponent;
  const int k = lsb / kLimbBits;
  const int s = lsb % kLimbBits;
  const std::uint64_t mag = static_cast<std::uint64_t>(mant < 0 ? -mant : mant);
  const u128 v = static_cast<u128>(mag) << s;
  const std::int64_t sign = mant < 0 ? -1 : 1;
  limbs_[k] += sign * static_cast<std::int64_t>(static_cast<std::uint32_t>(v));
  limbs_[k + 1] += sign * static_cast<std::int64_t>(static_cast<std::uint32_t>(v >> 32));
  limbs_[k + 2] += sign * static_cast<std::int64_t>(static_cast<std::uint32_t>(v >> 64));
  maybe_normalize();
}

void ExactSum::add_product(double x, double y) {
  const double p = x * y;
  if (!std::isfinite(p)) throw DomainError("ExactSum product overflow");
  add(p);
  add(std::fma(x, y, -p));
}

void ExactSum::maybe_normalize() {
  if (++pending_ >= (1u << 29)) normalize();
}

void ExactSum::normalize() {
  for (int i = 0; i + 1 < kLimbs; ++i) {
    const std::int64_t carry = limbs_[i] >> kLimbBits;  // floor division
    limbs_[i] -= carry * (std::int64_t{1} << kLimbBits);
    limbs_[i + 1] += carry;
  }
  pending_ = 0;
}

ExactSum& ExactSum::operator+=(const ExactSum& other) {
  ExactSum o = other;
  o.normalize();
  normalize();
  for (int i = 0; i < kLimbs; ++i) limbs_[i] += o.limbs_[i];
  normalize();
  return *this;
}

ExactSum ExactSum::operator-() const {
  ExactSum r = *this;
  for (auto& l : r.limbs_) l = -l;
  r.normalize();
  return r;
}

bool ExactSum::is_zero() const {
  ExactSum c = *this;
  c.normalize();
  for (auto l : c.limbs_) {
    if (l != 0) return false;
  }
  return true;
}

bool operator==(const ExactSum& lhs, const ExactSum& rhs) {
  ExactSum a = lhs;
  ExactSum b = rhs;
  a.normalize();
  b.normalize();
  return a.limbs_ == b.limbs_;
}

double ExactSum::to_double() const {
  ExactSum c = *this;
  c.normalize();
  double sign = 1.0;
  if (c.limbs_[kLimbs - 1] < 0) {
    sign = -1.0;
    for (auto& l : c.limbs_) l = -l;
    c.normalize();
  }
  int top = kLimbs - 1;
  while (top >= 0 && c.limbs_[top] == 0) --top;
  if (top < 0) return 0.0;
  // 128-bit window from the four highest limbs, sticky bit for the rest.
  u128 window = 0;
  for (int i = top; i > top - 4; --i) {
    window <<= 32;
    if (i >= 0) window |= static_cast<std::uint32_t>(c.limbs_[i]);
  }
  bool sticky = false;
  for (int i = top - 4; i >= 0; --i) {
    if (c.limbs_[i] != 0) {
      sticky = true;
      break;
    }
  }
  const int window_exp = kLimbBits * (top - 3) + kMinExponent;
  const auto hi = static_cast<std::uint64_t>(window >> 64);
  const int nbits = 128 - std::countl_zero(hi);  // top limb nonzero, so hi != 0
  const int shift = nbits - 53;
  std::uint64_t mant = static_cast<std::uint64_t>(window >> shift);
  const u128 rem = window & ((static_cast<u128>(1) << shift) - 1);
  const u128 half = static_cast<u128>(1) << (shift - 1);
  if (rem > half || (rem == half && (sticky || (mant & 1u)))) ++mant;
  return sign * std::ldexp(static_cast<double>(mant), shift + window_exp);
}

}  // namespace multistable

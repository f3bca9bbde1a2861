#include "multistable/stable.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "multistable/error.hpp"

namespace multistable {

void StableParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw ArgumentError("stable index must lie in (0, 2], got " + std::to_string(alpha));
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ArgumentError("stable scale must be positive and finite");
}

double sample_stable_unit(double alpha, RngStream& stream) {
  const auto block = stream.next_block();
  const double u1 = to_open_unit(block[0]);
  const double u2 = to_open_unit(block[1]);
  if (alpha == 2.0) {
    return std::numbers::sqrt2 * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  const double u = std::numbers::pi * (u1 - 0.5);
  if (alpha == 1.0) return std::tan(u);
  const double w = -std::log(u2);
  const double cu = std::cos(u);
  return std::sin(alpha * u) / std::pow(cu, 1.0 / alpha) * std::pow(std::cos((1.0 - alpha) * u) / w, (1.0 - alpha) / alpha);
}

double sample_stable(const StableParams& params, RngStream& stream) {
  params.validate();
  return params.scale * sample_stable_unit(params.alpha, stream);
}

}  // namespace multistable

#pragma once

#include "multistable/rng.hpp"

namespace multistable {

/// Symmetric alpha-stable law with characteristic function
/// exp(-scale^alpha |theta|^alpha).
///
/// Note the normalization at alpha = 2: the law is N(0, 2 scale^2), not
/// N(0, scale^2).
struct StableParams {
  double alpha = 2.0;
  double scale = 1.0;

  void validate() const;
};

/// One draw; consumes exactly one block of `stream`.
///
/// For alpha < 2 (alpha != 1) the Chambers-Mallows-Stuck symmetric form
///   X = sin(alpha U) / cos(U)^(1/alpha) * (cos((1 - alpha) U) / W)^((1 - alpha) / alpha)
/// with U uniform on (-pi/2, pi/2) and W standard exponential already has
/// characteristic function exp(-|theta|^alpha), so the scale constant is
/// sigma' = sigma. alpha = 1 uses tan(U); alpha = 2 uses Box-Muller with
/// standard deviation sqrt(2). The result is scale * (unit draw), so draws for
/// different scales from the same stream are exact multiples.
double sample_stable(const StableParams& params, RngStream& stream);

/// The scale-1 draw used by sample_stable.
double sample_stable_unit(double alpha, RngStream& stream);

}  // namespace multistable

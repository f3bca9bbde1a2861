#pragma once

#include <functional>
#include <string>
#include <vector>

#include "multistable/index_function.hpp"
#include "multistable/multistable.hpp"
#include "multistable/quadrature.hpp"
#include "multistable/real_function.hpp"
#include "multistable/report.hpp"
#include "multistable/rng.hpp"

namespace multistable {

enum class KernelKind { weighted_levy, reverse_ou, lfmm, custom };

std::string to_string(KernelKind kind);
/// Accepts levy / weighted_levy, rou / reverse_ou, lfmm.
KernelKind kernel_kind_from_string(const std::string& name);

struct KernelParams {
  /// weighted_levy: w(x); empty means w = 1. |w| <= weight_bound.
  std::function<double(double)> weight;
  double weight_bound = 1.0;
  /// reverse_ou
  double lambda = 1.0;
  /// lfmm
  double h = 0.5;
  double b_plus = 1.0;
  double b_minus = 0.0;
  /// custom: t -> f(t, .)
  std::function<RealFunction(double)> section;
};

/// A process kernel f(t, x) for Y(t) = \int f(t, x) dM_alpha(x).
///
///   weighted_levy  f(t, x) = w(x) 1_[0,t](x), with 1_[0,t] = -1_[t,0] for t < 0
///   reverse_ou     f(t, x) = exp(-lambda (x - t)) 1_[t,inf)(x)
///   lfmm           f(t, x) = b+ ((t-x)_+^beta - (-x)_+^beta) + b- ((t-x)_-^beta - (-x)_-^beta),
///                  beta = h - 1/alpha(x); where beta = 0 the kernel is
///                  (b+ - b-) 1_[0,t] (signed as above).
class ProcessKernel {
 public:
  KernelKind kind() const noexcept { return kind_; }
  const KernelParams& params() const noexcept { return params_; }
  const IndexFunction& alpha() const noexcept { return alpha_; }

  /// f(t, .) with support, breakpoints, singularities and tail envelopes.
  RealFunction section(double t) const;
  /// f(s, .) - f(v, .), evaluated without cancelling the common part.
  RealFunction increment(double s, double v) const;
  double operator()(double t, double x) const;
  std::string describe() const;

 private:
  friend ProcessKernel make_kernel(KernelKind, const KernelParams&, const IndexFunction&);
  ProcessKernel(KernelKind kind, KernelParams params, IndexFunction alpha);

  RealFunction lfmm_increment(double s, double v) const;

  KernelKind kind_;
  KernelParams params_;
  IndexFunction alpha_;
};

/// Validates the parameters against the hypotheses of each example and
/// throws ArgumentError naming the violated inequality:
///   reverse_ou  1 < sqrt(b) < a <= b <= 2, lambda > 0
///   lfmm        alpha(x) in [a, b] with b < 2, and 1/a - 1/b < h < 1 + 1/b - 1/a
ProcessKernel make_kernel(KernelKind kind, const KernelParams& params, const IndexFunction& alpha);

/// The tangent (local) form at u: Y'_u(t) = \int h(t, z) dM_{alpha(u)}(z).
struct LocalFormSpec {
  double h_exponent = 0.5;
  std::function<RealFunction(double)> local_kernel;
  double frozen_alpha = 2.0;
};

/// Local form of each built-in kernel at u:
///   weighted_levy  h = 1/alpha(u), h(t, z) = w(u) 1_[0,t](z)
///   reverse_ou     h = 1/alpha(u), h(t, z) = -1_[0,t](z)
///   lfmm           h = h, h(t, z) = rho_{alpha(u),h}(b+, b-, t, z)
LocalFormSpec tangent_form(const ProcessKernel& kernel, double u);

struct PathOptions {
  QuadratureSpec quad;
  SimulationLimits limits;
  /// Target for the |f|^{a,b} mass left outside the simulation window.
  double truncation_epsilon = 1e-12;
  /// The lfmm window stops growing at this many cells.
  std::size_t max_window_cells = std::size_t{1} << 20;
};

struct PathSample {
  std::vector<double> times;
  std::vector<double> values;
  int level = 0;
  RngStream stream;
  double window_lo = 0.0;
  double window_hi = 0.0;
  /// max over the extreme times of \int_{outside window} |f(t, x)|^{a,b} dx
  double residual_tail_mass = 0.0;
};

struct SimulationWindow {
  double lo = 0.0;
  double hi = 0.0;
  double residual_tail_mass = 0.0;
};

/// Window covering the kernel support for every t in `times`.
///   weighted_levy  [min(0, t_min), max(0, t_max)]
///   reverse_ou     [t_min, t_max + log(1/(a lambda eps)) / (a lambda)]
///   lfmm           doubled until the residual mass is below eps or the
///                  window reaches max_window_cells; the residual is reported.
SimulationWindow simulation_window(const ProcessKernel& kernel, const std::vector<double>& times, int level,
                                   const PathOptions& options = {});

/// One path: a single increments realization shared by every time, then
/// values[i] = integrate_sample(f(t_i, .), increments).
PathSample sample_path(const ProcessKernel& kernel, const std::vector<double>& times, int level,
                       const RngStream& stream, const PathOptions& options = {});

/// exp(-\int |sum_j theta_j f(t_j, x)|^{alpha(x)} dx)
double marginal_cf(const ProcessKernel& kernel, const std::vector<double>& t_list,
                   const std::vector<double>& theta_list, const QuadratureSpec& quad = {});

/// Smallest c1 with D(t, u) <= c1 |t - u|^exponent over pairs in [lo, hi] at
/// separations (hi - lo) 2^-k, k = 1..levels (eight pairs per separation).
struct HolderFit {
  std::vector<double> separations;
  std::vector<double> c1;  // per separation
  double c1_max = 0.0;
  double worst_t = 0.0;
  double worst_u = 0.0;
  /// c1 at the finest separation is finite and at most 1.05 times the
  /// largest c1 at coarser separations.
  bool stable = false;
};

HolderFit fit_holder_constant(const std::function<double(double, double)>& distance, double lo, double hi,
                              double exponent, int levels);

/// Fits D(t, u) = \int |f(t,x) - f(u,x)|^{alpha(x)} dx <= c1 |t - u|^{a eta}
/// over pairs in [lo, hi] at separations (hi - lo) 2^-k, k = 1..levels. The
/// check passes when every fitted c1 is finite and the finest separation does
/// not raise c1 by more than 5% over the coarser ones (no divergence).
/// Requires a > 1 and 1/a <= eta < 1.
VerifyReport continuity_modulus_check(const ProcessKernel& kernel, double lo, double hi, double eta,
                                      const QuadratureSpec& quad = {}, int levels = 6);

}  // namespace multistable

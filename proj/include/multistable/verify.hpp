#pragma once

#include <cstddef>
#include <vector>

#include "multistable/index_function.hpp"
#include "multistable/multistable.hpp"
#include "multistable/processes.hpp"
#include "multistable/quadrature.hpp"
#include "multistable/real_function.hpp"
#include "multistable/report.hpp"
#include "multistable/rng.hpp"

namespace multistable {

/// Empirical characteristic function on a grid of theta vectors.
struct EcfEstimate {
  std::vector<std::vector<double>> theta_grid;
  std::vector<double> re;
  std::vector<double> im;
  std::size_t n_samples = 0;
  double band = 0.0;  // 4 / sqrt(n_samples)
};

/// Samples are rows of dimension d (every theta vector has length d). Needs
/// at least 100 samples; throws ArgumentError otherwise.
EcfEstimate ecf(const std::vector<std::vector<double>>& samples, const std::vector<std::vector<double>>& theta_grid);
/// Scalar samples and scalar thetas.
EcfEstimate ecf(const std::vector<double>& samples, const std::vector<double>& thetas);

/// Default theta vectors for d-dimensional checks: each of 21 scalars in
/// [-2, 2] placed along a fixed set of directions (d = 1: the scalars
/// themselves; d = 2: the directions (1,0), (0,1), (1,1), (1,-1) and (2,1)
/// cycled over the scalars).
std::vector<std::vector<double>> default_theta_grid(std::size_t d);

/// sup over the grid of |Re ECF - target| and |Im ECF|.
double ecf_deviation(const EcfEstimate& e, const std::vector<double>& target);

/// Constants of the tail and moment bounds:
///   P(|int g dM| >= lambda) <= c1 \int |g/lambda|^alpha
///   E|int g dM|^p <= c2 ||g||_alpha^p
/// c1 = max_{q in {a,b}} 2^{q+1}/(q+1) and c2 = c1 a / (a - p).
double tail_constant_c1(double a, double b);
double moment_constant_c2(double a, double b, double p);

struct MonteCarloOptions {
  int level = 8;
  std::size_t n_paths = 10000;
  QuadratureSpec quad;
  SimulationLimits limits;
};

/// Joint ECF of (M(A_1), ..., M(A_d)) against the product of the exact
/// marginal CFs under the dyadic index alpha_level used by the simulator.
/// Passes when the sup deviation over the grid is within 4/sqrt(N).
VerifyReport independence_check(const IndexFunction& alpha, const std::vector<IntervalSet>& sets,
                                const MonteCarloOptions& mc, const RngStream& stream,
                                std::vector<std::vector<double>> theta_grid = {});

/// Pathwise additivity: measure_exact(A u B) == measure_exact(A) + measure_exact(B)
/// exactly for disjoint A and B, on n_paths realizations.
VerifyReport additivity_check(const IndexFunction& alpha, const IntervalSet& a_set, const IntervalSet& b_set,
                              const MonteCarloOptions& mc, const RngStream& stream);

/// Exact CFs of (M(A_j))_j under each alpha_n and under alpha on the theta
/// grid. Passes when the sup deviations do not increase along the sequence
/// (beyond a 1e-8 floor) and the last one is below final_tolerance.
VerifyReport cf_convergence_check(const std::vector<IndexFunction>& alpha_seq, const IndexFunction& alpha_limit,
                                  const std::vector<RealFunction>& functions,
                                  const std::vector<std::vector<double>>& theta_grid, const QuadratureSpec& quad = {},
                                  double final_tolerance = 1e-3);

struct TailCheckOptions {
  /// Multiplies c1; values below 1 give negative controls.
  double c1_scale = 1.0;
};

/// Empirical P(|int g dM| >= lambda) against c1 \int |g/lambda|^alpha at each
/// lambda; passes when empirical <= bound + 3 binomial standard errors.
VerifyReport tail_bound_check(const RealFunction& g, const IndexFunction& alpha, const std::vector<double>& lambdas,
                              const MonteCarloOptions& mc, const RngStream& stream, const TailCheckOptions& opts = {});

/// Empirical E|int g dM|^p against c2 ||g||_alpha^p; passes when empirical <=
/// bound + 3 bootstrap standard errors (200 resamples). Requires 0 < p < a.
VerifyReport moment_bound_check(const RealFunction& g, const IndexFunction& alpha, double p,
                                const MonteCarloOptions& mc, const RngStream& stream, double c2_scale = 1.0);

/// Samples of int g dM over n_paths realizations, one derived stream per path.
std::vector<double> sample_integrals(const RealFunction& g, const IndexFunction& alpha, const MonteCarloOptions& mc,
                                     const RngStream& stream);

/// \int |(f(u+rt, u+rz) - f(u, u+rz)) / r^{h - 1/alpha(u+rz)} - h(t, z)|^{a,b} dz
double localisability_condition_integral(const ProcessKernel& kernel, double u, double h_exp,
                                         const LocalFormSpec& local, double t, double r,
                                         const QuadratureSpec& quad = {});

/// Evaluates the condition integral for every t in t_probe and r in r_seq.
/// Passes when, for each t, the values do not increase along r_seq (beyond a
/// 1e-8 floor) and the last one is below 1e-3.
VerifyReport localisability_condition_check(const ProcessKernel& kernel, double u, double h_exp,
                                            const LocalFormSpec& local, const std::vector<double>& t_probe,
                                            const std::vector<double>& r_seq, const QuadratureSpec& quad = {});

/// CF of r^{-h}(Y(u + r t_j) - Y(u))_j at (theta_j), computed by quadrature.
double localized_cf(const ProcessKernel& kernel, double u, double h_exp, const std::vector<double>& t_list,
                    const std::vector<double>& thetas, double r, const QuadratureSpec& quad = {});
/// exp(-\int |sum_j theta_j h(t_j, z)|^{alpha(u)} dz)
double tangent_cf(const LocalFormSpec& local, const std::vector<double>& t_list, const std::vector<double>& thetas,
                  const QuadratureSpec& quad = {});

/// sup over theta vectors of |localized_cf - tangent_cf| for each r; passes
/// when non-increasing (1e-8 floor) with the last value below 1e-3.
VerifyReport localize_cf_check(const ProcessKernel& kernel, double u, double h_exp, const LocalFormSpec& local,
                               const std::vector<double>& t_list, const std::vector<std::vector<double>>& theta_list,
                               const std::vector<double>& r_seq, const QuadratureSpec& quad = {});

/// sup over theta vectors of |scaled_cf - cf_joint at frozen alpha(u)| for
/// each r; passes when non-increasing (1e-8 floor) with the last value below 1e-3.
VerifyReport measure_scaling_check(const IndexFunction& alpha, double u, const std::vector<RealFunction>& functions,
                                   const std::vector<std::vector<double>>& theta_list, const std::vector<double>& r_seq,
                                   const QuadratureSpec& quad = {});

/// For each r, fits c1 in
///   \int |(f(u+rt, u+rz) - f(u+rv, u+rz)) / r^{h - 1/alpha(u+rz)}|^{alpha(u+rz)} dz <= c1 |t - v|^{a eta}
/// over (t, v) in [0, 1] at separations 2^-k. Passes when every fit is
/// stable in the separation and c1 varies by at most a factor 2 across r_seq.
/// Requires eta > 1/a.
VerifyReport strong_localisability_diagnostic(const ProcessKernel& kernel, double u, double h_exp, double eta,
                                              const std::vector<double>& r_seq, const QuadratureSpec& quad = {},
                                              int levels = 6);

/// True when the values do not increase by more than `floor` step to step.
bool non_increasing(const std::vector<double>& values, double floor = 1e-8);
bool strictly_decreasing(const std::vector<double>& values);

}  // namespace multistable

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pkcol/graph.hpp"
#include "pkcol/stats.hpp"

namespace pkcol {

/// Trial t of a run draws from Rng(derive_seed(master_seed, t)).
struct TrialSpec {
  ModelParams params;
  std::int64_t trials = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
};

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::optional<double> reference;
};

struct RunOptions {
  int threads = 1;
  /// Per-trial search budget for decide(); exhausted trials are excluded.
  std::optional<std::uint64_t> node_budget = 50'000'000;
};

/// One point of a colorability curve. `trials` counts decided trials only;
/// `excluded` counts trials whose search budget ran out.
struct CurvePoint {
  double d = 0.0;
  std::int64_t m = 0;
  std::int64_t trials = 0;
  std::int64_t colorable = 0;
  std::int64_t excluded = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;

  Estimate estimate() const;
};

/// Fraction of sampled instances with a permuted k-coloring, with a Wilson
/// 95% interval.
CurvePoint mc_colorable(const TrialSpec& spec, const RunOptions& options = {});

/// Colorability at each degree in `degrees` (m = llround(d n / 2)). The
/// point at degree d uses master seed derive_seed(seed, m).
std::vector<CurvePoint> colorability_curve(int n, int k, const std::vector<double>& degrees,
                                           std::int64_t trials, std::uint64_t seed,
                                           const RunOptions& options = {});

struct MomentEstimates {
  Estimate x;   // reference exp(expected_X_log)
  Estimate x2;  // reference exp(expected_X2_log)
  Estimate z;   // no closed-form finite-n reference
  /// Trials breaking colorable <=> X >= 1 <=> Z > 0, or with Z < 1 on a
  /// colorable loop-free instance.
  std::int64_t identity_violations = 0;
  /// Colorable trials with Z < 1; possible only when the graph has a loop.
  std::int64_t loop_z_below_one = 0;
};

/// Sample means of the exact per-instance X, X^2 and Z.
MomentEstimates mc_moments(const TrialSpec& spec, const RunOptions& options = {});

struct ThresholdResult {
  double d_hat = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  std::vector<CurvePoint> curve;  // every evaluated point, sorted by d
  std::vector<std::string> warnings;
};

/// Bisection on d for the degree where colorability crosses `target`.
/// Starts from [0, d_hi] with d_hi doubled from the first-moment bound
/// until its interval lies below target. Stops once the midpoint's Wilson
/// interval contains target or the bracket is narrower than 2/n (one edge).
ThresholdResult threshold_bisect(int n, int k, std::int64_t trials_per_point, double target,
                                 std::uint64_t seed, const RunOptions& options = {});

/// Pairs of neighbouring curve points whose Wilson intervals show an increase.
std::vector<std::string> monotonicity_violations(const std::vector<CurvePoint>& curve);

struct AvailableColorsReport {
  int k = 0;
  int degree = 0;
  std::int64_t trials = 0;
  std::vector<double> empirical;  // index c-1 -> frequency of c available colors
  std::vector<double> reference;  // exact_Q(degree, k, c)
  double tv = 0.0;
  /// Split by the center's color: 0 versus any other color.
  double tv_center_zero = 0.0;
  double tv_center_other = 0.0;
  double tv_between_splits = 0.0;
};

/// Decorated star with `degree` leaves, uniform proper coloring; compares
/// the histogram of c(sigma, center) against exact_Q.
AvailableColorsReport check_available_colors(int k, int degree, std::int64_t trials,
                                             std::uint64_t seed);

struct ChiSquareReport {
  double statistic = 0.0;
  int dof = 0;
  double p_value = 1.0;
  std::int64_t trials = 0;
};

/// Single decorated edge (u, v) conditioned on a proper coloring: tests that
/// (pi(sigma(u)), pi^{-1}(sigma(v))) is uniform on ([k]-sigma(v)) x ([k]-sigma(u)).
/// With `self_loop` the edge is (v, v) and the pair lives in ([k]-sigma(v))^2.
ChiSquareReport check_edge_indep(int k, std::int64_t trials, std::uint64_t seed, bool self_loop = false);

struct DegreeModelReport {
  ChiSquareReport fit;
  bool sums_conserved = true;
  std::vector<std::int64_t> histogram;  // degree of vertex 0
};

/// Degree of vertex 0 in G~(n, m) against Binomial(2m, 1/n); also checks
/// that every sampled degree sequence sums to 2m.
DegreeModelReport check_degree_model(const ModelParams& params, std::int64_t trials, std::uint64_t seed);

}  // namespace pkcol

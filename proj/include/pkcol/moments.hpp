#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pkcol/exact.hpp"

namespace pkcol {

/// Color count and average degree for the annealed rate functions.
struct MomentParams {
  int k = 3;
  double d = 0.0;

  void validate() const;
};

/// -z ln z - (1-z) ln(1-z), with h(0) = h(1) = 0.
double entropy(double zeta);

/// Probability that a uniformly random decorated edge is satisfied by two
/// colorings whose overlap (fraction of agreeing vertices) is zeta.
double pair_prob(double zeta, int k);

/// Exponential rate of the pair-count summand at overlap zeta; phi(1/k) = 0.
double phi(double zeta, const MomentParams& params);

/// x - (x^2/2)(1 - 2/(3(k-1))); dominates ln(1+x) on (-1, 1/(k-1)].
double ell(double x, int k);

/// phi with the edge term's logarithm replaced by ell. psi >= phi, with
/// equality at zeta = 1/k.
double psi(double zeta, const MomentParams& params);

/// Closed form psi''(1/k) = k^2 / (k-1)^3 * (d - (k-1)^2).
double psi_pp_center(const MomentParams& params);

/// Closed form of psi''''(zeta) on (0, 1).
double psi_pppp(double zeta, const MomentParams& params);

/// Central second difference of phi at zeta.
double phi_second_difference(double zeta, const MomentParams& params, double h = 1e-4);

struct ScanOptions {
  int resolution = 100000;         // grid intervals on [0, 1]
  double refine_tolerance = 1e-10;  // golden-section bracket width
  double center_tolerance = 1e-9;   // |phi(zeta_max)| bound for the center max
  double other_margin = 1e-6;       // other maxima must lie below -other_margin
};

struct ScanReport {
  int k = 0;
  double d = 0.0;
  int grid_resolution = 0;
  double zeta_max = 0.0;
  double max_value = 0.0;
  std::vector<std::pair<double, double>> local_maxima;  // sorted by zeta
  double curvature_at_center = 0.0;
  bool condition_holds = false;
};

/// Grid scan of phi on [0, 1] with golden-section refinement of every
/// discrete local maximum. condition_holds means: the global maximum sits
/// at 1/k with |phi| within center_tolerance, every other local maximum is
/// below -other_margin, and the second difference at 1/k is negative.
ScanReport scan_second_moment(const MomentParams& params, const ScanOptions& options = {});

struct PhiRow {
  double zeta;
  double phi;
  double psi;
};

/// rows evenly spaced samples of (zeta, phi, psi) including both endpoints.
std::vector<PhiRow> phi_table(const MomentParams& params, int rows);

/// Smallest k0 in [k_min, k_max] such that the scan certifies the
/// condition for every k in [k0, k_max] at d = 2k ln k - ln k - 2 - eps.
std::optional<int> smallest_certified_k(double eps, int k_min = 3, int k_max = 200,
                                        const ScanOptions& options = {});

/// 2 ln k / (-ln(1 - 1/k)).
double first_moment_bound(int k);

/// Probability that b balls in k-1 bins leave exactly c-1 bins empty,
/// by inclusion-exclusion in exact arithmetic.
Rational exact_Q(int balls, int k, int c);

/// (1 - (1-r)^k) / (k r), the mean of 1/c when c-1 ~ Bin(k-1, r).
double poissonized_inverse_mean(int k, double r);

/// (1/n) ln E[Z] in the limit: (d/2) ln(1-1/k) + d/(k-1) + ln(1 - (1 - e^{-d/(k-1)})^k).
double f_rate(double d, int k);

/// Sign change of f_rate in [k ln k, 3k ln k] by bisection; the bracket is
/// widened a few times before giving up with NoSignChange.
double improved_upper_bound(int k, double tolerance = 1e-10);

/// ln E[X] = n ln k + m ln(1 - 1/k).
double expected_X_log(std::int64_t n, std::int64_t m, int k);

/// ln E[X^2] = ln(k^n sum_z C(n,z) (k-1)^{n-z} p(z/n)^m), via log-sum-exp.
double expected_X2_log(std::int64_t n, std::int64_t m, int k);

struct BoundsRow {
  int k = 0;
  double fm_upper = 0.0;
  double improved_upper = 0.0;
  double asymptotic_lower = 0.0;  // 2k ln k - ln k - 2
  double asymptotic_upper = 0.0;  // 2k ln k - ln k - 1
};

BoundsRow bounds_row(int k, double tolerance = 1e-10);
std::vector<BoundsRow> bounds_table(int k_min, int k_max, double tolerance = 1e-10);

/// 2k ln k - ln k - 2 - eps.
double lower_bound_degree(int k, double eps);

}  // namespace pkcol

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pkcol {

struct Interval {
  double lo;
  double hi;
};

/// Two-sided 95% z quantile.
inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z = kZ95);

/// sum (obs - exp)^2 / exp over cells with positive expectation.
double chi_square_statistic(std::span<const double> observed, std::span<const double> expected);

/// Upper tail P[chi2_dof >= statistic]; 1 when dof <= 0.
double chi_square_p_value(double statistic, int dof);

/// Merges adjacent cells (from both tails inward) until every expected count
/// is at least min_expected. Returns {observed, expected} after pooling.
std::pair<std::vector<double>, std::vector<double>> pool_sparse_cells(std::span<const double> observed,
                                                                      std::span<const double> expected,
                                                                      double min_expected = 5.0);

/// Half the L1 distance between two distributions on the same support.
double total_variation(std::span<const double> p, std::span<const double> q);

/// Binomial(trials, p) probability mass at `successes`.
double binomial_pmf(std::int64_t trials, double p, std::int64_t successes);

/// Mean and standard error of the mean, summed in input order.
struct MeanStderr {
  double mean;
  double std_error;
};
MeanStderr mean_stderr(std::span<const double> samples);

}  // namespace pkcol

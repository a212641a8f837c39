#include "pkcol/stats.hpp"

#include <cmath>
#include <numeric>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "pkcol/errors.hpp"

namespace pkcol {

Interval wilson_interval(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0 || successes < 0 || successes > trials)
    throw InvalidParameter("wilson_interval needs 0 <= successes <= trials, trials > 0");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double chi_square_statistic(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw InvalidParameter("chi-square: size mismatch");
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] <= 0.0) continue;
    const double diff = observed[i] - expected[i];
    stat += diff * diff / expected[i];
  }
  return stat;
}

double chi_square_p_value(double statistic, int dof) {
  if (dof <= 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  boost::math::chi_squared dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

std::pair<std::vector<double>, std::vector<double>> pool_sparse_cells(std::span<const double> observed,
                                                                      std::span<const double> expected,
                                                                      double min_expected) {
  if (observed.size() != expected.size()) throw InvalidParameter("pooling: size mismatch");
  std::vector<double> obs(observed.begin(), observed.end());
  std::vector<double> exp(expected.begin(), expected.end());
  // Fold the low tail forward, then the high tail backward.
  while (exp.size() > 1 && exp.front() < min_expected) {
    exp[1] += exp[0];
    obs[1] += obs[0];
    exp.erase(exp.begin());
    obs.erase(obs.begin());
  }
  while (exp.size() > 1 && exp.back() < min_expected) {
    exp[exp.size() - 2] += exp.back();
    obs[obs.size() - 2] += obs.back();
    exp.pop_back();
    obs.pop_back();
  }
  return {std::move(obs), std::move(exp)};
}

double total_variation(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw InvalidParameter("total_variation: size mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return 0.5 * sum;
}

double binomial_pmf(std::int64_t trials, double p, std::int64_t successes) {
  if (successes < 0 || successes > trials) return 0.0;
  boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
  return boost::math::pdf(dist, static_cast<double>(successes));
}

MeanStderr mean_stderr(std::span<const double> samples) {
  if (samples.empty()) throw InvalidParameter("mean_stderr of an empty sample");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= n;
  if (samples.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace pkcol

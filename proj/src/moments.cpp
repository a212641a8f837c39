#include "pkcol/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pkcol/errors.hpp"

namespace pkcol {

namespace {

void check_zeta(double zeta) {
  if (!(zeta >= 0.0 && zeta <= 1.0)) throw InvalidParameter("overlap must lie in [0, 1]");
}

void check_k(int k, int minimum) {
  if (k < minimum) throw InvalidParameter("k must be at least " + std::to_string(minimum));
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Golden-section maximization of fn on [lo, hi].
template <typename Fn>
double golden_max(Fn&& fn, double lo, double hi, double tolerance) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = fn(x1), f2 = fn(x2);
  while (b - a > tolerance) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = fn(x1);
    }
  }
  // Compare against the bracket ends so maxima at 0 or 1 are not missed.
  double best = 0.5 * (a + b);
  double best_value = fn(best);
  for (double x : {lo, hi}) {
    const double v = fn(x);
    if (v > best_value) {
      best = x;
      best_value = v;
    }
  }
  return best;
}

}  // namespace

void MomentParams::validate() const {
  check_k(k, 3);
  if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidParameter("d must be a nonnegative real");
}

double entropy(double zeta) {
  check_zeta(zeta);
  return -xlogx(zeta) - xlogx(1.0 - zeta);
}

double pair_prob(double zeta, int k) {
  check_zeta(zeta);
  check_k(k, 2);
  const double kk = k;
  const double w = 1.0 - zeta;
  return zeta * zeta * (1.0 - 1.0 / kk) + 2.0 * zeta * w * (1.0 - 2.0 / kk) +
         w * w * (1.0 - 2.0 / kk + 1.0 / (kk * (kk - 1.0)));
}

double phi(double zeta, const MomentParams& params) {
  params.validate();
  check_zeta(zeta);
  const double k = params.k;
  // p(zeta) / (1-1/k)^2 = 1 + (k zeta - 1)^2 / (k-1)^3.
  const double excess = (k * zeta - 1.0) * (k * zeta - 1.0) / ((k - 1.0) * (k - 1.0) * (k - 1.0));
  return entropy(zeta) + (1.0 - zeta) * std::log(k - 1.0) - std::log(k) +
         0.5 * params.d * std::log1p(excess);
}

double ell(double x, int k) {
  check_k(k, 2);
  return x - 0.5 * x * x * (1.0 - 2.0 / (3.0 * (k - 1.0)));
}

double psi(double zeta, const MomentParams& params) {
  params.validate();
  check_zeta(zeta);
  const double k = params.k;
  const double excess = (k * zeta - 1.0) * (k * zeta - 1.0) / ((k - 1.0) * (k - 1.0) * (k - 1.0));
  return entropy(zeta) + (1.0 - zeta) * std::log(k - 1.0) - std::log(k) +
         0.5 * params.d * ell(excess, params.k);
}

double psi_pp_center(const MomentParams& params) {
  params.validate();
  const double k = params.k;
  return k * k / ((k - 1.0) * (k - 1.0) * (k - 1.0)) * (params.d - (k - 1.0) * (k - 1.0));
}

double psi_pppp(double zeta, const MomentParams& params) {
  params.validate();
  if (!(zeta > 0.0 && zeta < 1.0)) throw InvalidParameter("psi'''' needs zeta in (0, 1)");
  const double k = params.k;
  const double w = 1.0 - zeta;
  return -2.0 * (1.0 / (zeta * zeta * zeta) + 1.0 / (w * w * w) +
                 params.d * std::pow(k, 4) * (3.0 * k - 5.0) / std::pow(k - 1.0, 7));
}

double phi_second_difference(double zeta, const MomentParams& params, double h) {
  return (phi(zeta + h, params) - 2.0 * phi(zeta, params) + phi(zeta - h, params)) / (h * h);
}

ScanReport scan_second_moment(const MomentParams& params, const ScanOptions& options) {
  params.validate();
  if (options.resolution < 1000) throw InvalidParameter("scan resolution must be at least 1000");
  if (!(options.refine_tolerance > 0.0)) throw InvalidParameter("refine tolerance must be positive");

  const int n = options.resolution;
  const double step = 1.0 / n;
  std::vector<double> values(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) values[static_cast<std::size_t>(i)] = phi(i * step, params);

  auto f = [&](double z) { return phi(std::clamp(z, 0.0, 1.0), params); };
  std::vector<std::pair<double, double>> maxima;
  for (int i = 0; i <= n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const bool left_ok = i == 0 || values[idx] >= values[idx - 1];
    const bool right_ok = i == n || values[idx] >= values[idx + 1];
    if (!(left_ok && right_ok)) continue;
    const double lo = std::max(0.0, (i - 1) * step);
    const double hi = std::min(1.0, (i + 1) * step);
    const double z = golden_max(f, lo, hi, options.refine_tolerance);
    if (!maxima.empty() && std::abs(maxima.back().first - z) < 2.0 * step) {
      if (f(z) > maxima.back().second) maxima.back() = {z, f(z)};
      continue;
    }
    maxima.emplace_back(z, f(z));
  }

  ScanReport report;
  report.k = params.k;
  report.d = params.d;
  report.grid_resolution = n;
  report.local_maxima = maxima;
  const auto best = std::max_element(maxima.begin(), maxima.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
  report.zeta_max = best->first;
  report.max_value = best->second;

  const double center = 1.0 / params.k;
  report.curvature_at_center = phi_second_difference(center, params);

  bool others_negative = true;
  bool center_found = false;
  for (const auto& [z, v] : maxima) {
    if (std::abs(z - center) <= 2.0 * step) {
      center_found = true;
      continue;
    }
    if (!(v < -options.other_margin)) others_negative = false;
  }
  report.condition_holds = center_found && std::abs(report.zeta_max - center) <= 2.0 * step &&
                           std::abs(report.max_value) < options.center_tolerance &&
                           others_negative && report.curvature_at_center < 0.0;
  return report;
}

std::vector<PhiRow> phi_table(const MomentParams& params, int rows) {
  params.validate();
  if (rows < 2) throw InvalidParameter("phi_table needs at least 2 rows");
  std::vector<PhiRow> out;
  out.reserve(static_cast<std::size_t>(rows));
  for (int i = 0; i < rows; ++i) {
    const double z = static_cast<double>(i) / (rows - 1);
    out.push_back({z, phi(z, params), psi(z, params)});
  }
  return out;
}

double lower_bound_degree(int k, double eps) {
  const double lk = std::log(static_cast<double>(k));
  return 2.0 * k * lk - lk - 2.0 - eps;
}

std::optional<int> smallest_certified_k(double eps, int k_min, int k_max, const ScanOptions& options) {
  check_k(k_min, 3);
  if (k_max < k_min) throw InvalidParameter("empty k range");
  std::optional<int> k0;
  for (int k = k_max; k >= k_min; --k) {
    const double d = lower_bound_degree(k, eps);
    if (d < 0.0) break;
    if (!scan_second_moment({k, d}, options).condition_holds) break;
    k0 = k;
  }
  return k0;
}

double first_moment_bound(int k) {
  check_k(k, 2);
  return 2.0 * std::log(static_cast<double>(k)) / -std::log1p(-1.0 / k);
}

Rational exact_Q(int balls, int k, int c) {
  check_k(k, 2);
  if (balls < 0) throw InvalidParameter("ball count must be nonnegative");
  if (c < 1 || c > k) throw InvalidParameter("available colors must lie in 1..k");
  using boost::multiprecision::pow;
  const int bins = k - 1;
  const int empty = c - 1;
  const int candidates = bins - empty;  // bins that must all be hit
  auto binom = [](int n, int r) {
    BigInt out = 1;
    for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
  };
  BigInt numerator = 0;
  for (int j = 0; j <= candidates; ++j) {
    const int reachable = candidates - j;
    BigInt term = binom(candidates, j) *
                  (balls == 0 ? BigInt(1) : pow(BigInt(reachable), static_cast<unsigned>(balls)));
    numerator += (j % 2 == 0) ? term : BigInt(-term);
  }
  numerator *= binom(bins, empty);
  return Rational(numerator, pow(BigInt(bins), static_cast<unsigned>(balls)));
}

double poissonized_inverse_mean(int k, double r) {
  check_k(k, 1);
  if (!(r > 0.0) || r > 1.0) throw InvalidParameter("r must lie in (0, 1]");
  const double covered = r == 1.0 ? 1.0 : -std::expm1(k * std::log1p(-r));
  return covered / (k * r);
}

double f_rate(double d, int k) {
  check_k(k, 2);
  if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidParameter("d must be a nonnegative real");
  const double kk = k;
  if (d == 0.0) return 0.0;
  const double free_bin = std::exp(-d / (kk - 1.0));
  // ln(1 - (1 - e^{-d/(k-1)})^k) without cancellation.
  const double last = std::log(-std::expm1(kk * std::log1p(-free_bin)));
  return 0.5 * d * std::log1p(-1.0 / kk) + d / (kk - 1.0) + last;
}

double improved_upper_bound(int k, double tolerance) {
  check_k(k, 3);
  if (!(tolerance > 0.0)) throw InvalidParameter("tolerance must be positive");
  const double lk = std::log(static_cast<double>(k));
  double lo = k * lk;
  double hi = 3.0 * k * lk;
  double f_lo = f_rate(lo, k);
  double f_hi = f_rate(hi, k);
  for (int widen = 0; widen < 8 && !(f_lo > 0.0 && f_hi < 0.0); ++widen) {
    if (!(f_lo > 0.0)) lo *= 0.5;
    if (!(f_hi < 0.0)) hi *= 2.0;
    f_lo = f_rate(lo, k);
    f_hi = f_rate(hi, k);
  }
  if (!(f_lo > 0.0 && f_hi < 0.0))
    throw NoSignChange("f_rate does not change sign for k=" + std::to_string(k));
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (f_rate(mid, k) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double expected_X_log(std::int64_t n, std::int64_t m, int k) {
  check_k(k, 2);
  if (n < 1 || m < 0) throw InvalidParameter("need n >= 1 and m >= 0");
  return static_cast<double>(n) * std::log(static_cast<double>(k)) +
         static_cast<double>(m) * std::log1p(-1.0 / k);
}

double expected_X2_log(std::int64_t n, std::int64_t m, int k) {
  check_k(k, 2);
  if (n < 1 || m < 0) throw InvalidParameter("need n >= 1 and m >= 0");
  const double nn = static_cast<double>(n);
  const double log_km1 = std::log(k - 1.0);
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n) + 1);
  for (std::int64_t z = 0; z <= n; ++z) {
    const double zz = static_cast<double>(z);
    const double log_binom = std::lgamma(nn + 1.0) - std::lgamma(zz + 1.0) - std::lgamma(nn - zz + 1.0);
    double t = log_binom + (nn - zz) * log_km1;
    if (m > 0) t += static_cast<double>(m) * std::log(pair_prob(zz / nn, k));
    terms.push_back(t);
  }
  const double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp(t - top);
  return nn * std::log(static_cast<double>(k)) + top + std::log(acc);
}

BoundsRow bounds_row(int k, double tolerance) {
  check_k(k, 3);
  const double lk = std::log(static_cast<double>(k));
  BoundsRow row;
  row.k = k;
  row.fm_upper = first_moment_bound(k);
  row.improved_upper = improved_upper_bound(k, tolerance);
  row.asymptotic_lower = 2.0 * k * lk - lk - 2.0;
  row.asymptotic_upper = 2.0 * k * lk - lk - 1.0;
  return row;
}

std::vector<BoundsRow> bounds_table(int k_min, int k_max, double tolerance) {
  if (k_max < k_min) throw InvalidParameter("k-max must not be below k-min");
  std::vector<BoundsRow> rows;
  for (int k = k_min; k <= k_max; ++k) rows.push_back(bounds_row(k, tolerance));
  return rows;
}

}  // namespace pkcol

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace pkcol {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact accumulator for sums of reciprocals 1/p of positive integers.
///
/// Terms are bucketed by denominator and only combined into a rational at
/// the end, which keeps inner loops free of big-number arithmetic.
class ReciprocalSum {
 public:
  void add(std::uint64_t denominator, std::uint64_t multiplicity = 1) {
    buckets_[denominator] += multiplicity;
  }

  void merge(const ReciprocalSum& other) {
    for (const auto& [den, count] : other.buckets_) buckets_[den] += count;
  }

  bool empty() const { return buckets_.empty(); }

  Rational value() const {
    Rational total = 0;
    for (const auto& [den, count] : buckets_) total += Rational(BigInt(count), BigInt(den));
    return total;
  }

  /// ln of the sum by log-sum-exp; -infinity when empty.
  double log_value() const {
    if (buckets_.empty()) return -std::numeric_limits<double>::infinity();
    double top = -std::numeric_limits<double>::infinity();
    for (const auto& [den, count] : buckets_)
      top = std::max(top, std::log(static_cast<double>(count)) - std::log(static_cast<double>(den)));
    double acc = 0.0;
    for (const auto& [den, count] : buckets_)
      acc += std::exp(std::log(static_cast<double>(count)) - std::log(static_cast<double>(den)) - top);
    return top + std::log(acc);
  }

  long double approx() const {
    long double total = 0;
    for (const auto& [den, count] : buckets_)
      total += static_cast<long double>(count) / static_cast<long double>(den);
    return total;
  }

 private:
  std::map<std::uint64_t, std::uint64_t> buckets_;
};

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace pkcol

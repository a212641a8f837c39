#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "pkcol/errors.hpp"
#include "pkcol/stats.hpp"

using namespace pkcol;

TEST_CASE("wilson_interval") {
  // Reference values from the closed form evaluated by hand.
  const auto half = wilson_interval(50, 100);
  CHECK(half.lo == doctest::Approx(0.403831).epsilon(1e-5));
  CHECK(half.hi == doctest::Approx(0.596169).epsilon(1e-5));
  const auto none = wilson_interval(0, 20);
  CHECK(none.lo == 0.0);
  CHECK(none.hi == doctest::Approx(0.161125).epsilon(1e-5));
  const auto all = wilson_interval(20, 20);
  CHECK(all.hi == doctest::Approx(1.0));
  CHECK(all.lo == doctest::Approx(1.0 - 0.161125).epsilon(1e-5));
  for (int s = 0; s <= 30; ++s) {
    const auto ci = wilson_interval(s, 30);
    CHECK(ci.lo <= s / 30.0 + 1e-15);
    CHECK(ci.hi >= s / 30.0 - 1e-15);
  }
  CHECK_THROWS_AS(wilson_interval(1, 0), InvalidParameter);
  CHECK_THROWS_AS(wilson_interval(5, 4), InvalidParameter);
}

TEST_CASE("chi-square") {
  const std::vector<double> obs{10, 20, 30}, exp{20, 20, 20};
  CHECK(chi_square_statistic(obs, exp) == doctest::Approx(10.0));
  CHECK(chi_square_p_value(10.0, 2) == doctest::Approx(std::exp(-5.0)).epsilon(1e-12));
  CHECK(chi_square_p_value(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(chi_square_p_value(0.0, 3) == 1.0);
  CHECK(chi_square_p_value(5.0, 0) == 1.0);
  CHECK_THROWS_AS(chi_square_statistic(obs, std::vector<double>{1, 2}), InvalidParameter);
}

TEST_CASE("pool_sparse_cells") {
  const std::vector<double> obs{1, 2, 50, 60, 3, 1}, exp{0.5, 3, 48, 62, 4, 0.5};
  const auto [po, pe] = pool_sparse_cells(obs, exp);
  double so = 0, se = 0;
  for (double x : po) so += x;
  for (double x : pe) se += x;
  CHECK(so == doctest::Approx(117));
  CHECK(se == doctest::Approx(118));
  for (double x : pe) CHECK(x >= 5.0);
  CHECK(po.size() == pe.size());
  CHECK(po.size() == 2);
}

TEST_CASE("total_variation") {
  const std::vector<double> p{0.5, 0.5, 0.0}, q{0.25, 0.25, 0.5};
  CHECK(total_variation(p, q) == doctest::Approx(0.5));
  CHECK(total_variation(p, p) == 0.0);
}

TEST_CASE("binomial_pmf") {
  CHECK(binomial_pmf(4, 0.5, 2) == doctest::Approx(6.0 / 16));
  CHECK(binomial_pmf(10, 0.1, 0) == doctest::Approx(std::pow(0.9, 10)));
  double total = 0;
  for (int x = 0; x <= 30; ++x) total += binomial_pmf(30, 0.3, x);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(binomial_pmf(5, 0.5, 6) == 0.0);
}

TEST_CASE("mean_stderr") {
  const std::vector<double> xs{1, 2, 3, 4};
  const auto m = mean_stderr(xs);
  CHECK(m.mean == doctest::Approx(2.5));
  CHECK(m.std_error == doctest::Approx(std::sqrt(5.0 / 3 / 4)));
  const std::vector<double> constant(10, 7.0);
  CHECK(mean_stderr(constant).std_error == 0.0);
  const std::vector<double> one{3.0};
  CHECK(mean_stderr(one).std_error == 0.0);
}

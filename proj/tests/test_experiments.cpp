#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pkcol/errors.hpp"
#include "pkcol/experiments.hpp"
#include "pkcol/moments.hpp"

using namespace pkcol;

TEST_CASE("mc_colorable") {
  SUBCASE("m = 0 is always colorable") {
    const auto p = mc_colorable({{5, 0, 3, 0}, 50, 1});
    CHECK(p.colorable == 50);
    CHECK(p.p_hat == 1.0);
    CHECK(p.excluded == 0);
  }
  SUBCASE("a single loop on one vertex fails only for the identity") {
    const auto p = mc_colorable({{1, 1, 3, 0}, 100'000, 42});
    const double se = std::sqrt(5.0 / 36 / 100'000);
    CHECK(std::abs(p.p_hat - 5.0 / 6) < 5 * se);
    CHECK(p.ci_lo < 5.0 / 6);
    CHECK(p.ci_hi > 5.0 / 6);
  }
  SUBCASE("identical across thread counts") {
    const TrialSpec spec{{30, 60, 3, 0}, 200, 99};
    RunOptions one, three;
    three.threads = 3;
    const auto a = mc_colorable(spec, one), b = mc_colorable(spec, three);
    CHECK(a.colorable == b.colorable);
    CHECK(a.p_hat == b.p_hat);
  }
  SUBCASE("budget exhaustion is counted, not hidden") {
    RunOptions tight;
    tight.node_budget = 1;
    const auto p = mc_colorable({{20, 40, 3, 0}, 20, 3}, tight);
    CHECK(p.excluded + p.trials == 20);
    CHECK(p.excluded > 0);
  }
  CHECK_THROWS_AS(mc_colorable({{5, 1, 3, 0}, 0, 1}), InvalidParameter);
}

TEST_CASE("colorability_curve") {
  const std::vector<double> degrees{0.0, 2.0, 4.0, 6.0, 8.0};
  const auto curve = colorability_curve(30, 3, degrees, 200, 7);
  REQUIRE(curve.size() == 5);
  CHECK(curve.front().p_hat == 1.0);
  CHECK(curve[2].m == 60);
  CHECK(curve.back().p_hat < curve.front().p_hat);
  CHECK(monotonicity_violations(curve).empty());
  RunOptions two;
  two.threads = 2;
  const auto again = colorability_curve(30, 3, degrees, 200, 7, two);
  for (std::size_t i = 0; i < curve.size(); ++i) CHECK(again[i].colorable == curve[i].colorable);
}

TEST_CASE("monotonicity_violations") {
  CurvePoint low, high;
  low.d = 1;
  low.ci_lo = 0.1;
  low.ci_hi = 0.2;
  high.d = 2;
  high.ci_lo = 0.5;
  high.ci_hi = 0.6;
  CHECK(monotonicity_violations({low, high}).size() == 1);
  CHECK(monotonicity_violations({high, low}).empty());
}

TEST_CASE("mc_moments") {
  SUBCASE("m = 0 is deterministic") {
    const auto e = mc_moments({{4, 0, 3, 0}, 30, 5});
    CHECK(e.x.mean == 81.0);
    CHECK(e.x.std_error == 0.0);
    CHECK(e.z.mean == 1.0);
    CHECK(e.z.std_error == 0.0);
    CHECK(e.x2.mean == 81.0 * 81.0);
    CHECK(*e.x.reference == doctest::Approx(81.0));
    CHECK(*e.x2.reference == doctest::Approx(81.0 * 81.0));
  }
  SUBCASE("agrees with the exact first and second moments") {
    const auto e = mc_moments({{4, 3, 3, 0}, 20'000, 11});
    CHECK(std::abs(e.x.mean - *e.x.reference) < 4 * e.x.std_error);
    CHECK(std::abs(e.x2.mean - *e.x2.reference) < 4 * e.x2.std_error);
    CHECK(e.identity_violations == 0);
    CHECK(e.z.mean > 0.0);
  }
  SUBCASE("identical across thread counts") {
    RunOptions two;
    two.threads = 2;
    const TrialSpec spec{{5, 6, 3, 0}, 300, 12};
    const auto a = mc_moments(spec), b = mc_moments(spec, two);
    CHECK(a.x.mean == b.x.mean);
    CHECK(a.z.mean == b.z.mean);
    CHECK(a.loop_z_below_one == b.loop_z_below_one);
  }
}

TEST_CASE("threshold_bisect") {
  const auto r = threshold_bisect(20, 3, 100, 0.5, 3);
  CHECK(r.bracket_lo <= r.d_hat);
  CHECK(r.d_hat <= r.bracket_hi);
  REQUIRE_FALSE(r.curve.empty());
  CHECK(r.curve.front().m == 0);
  CHECK(r.curve.front().p_hat == 1.0);
  for (std::size_t i = 1; i < r.curve.size(); ++i) CHECK(r.curve[i - 1].m < r.curve[i].m);
  CHECK(r.d_hat > 1.0);
  CHECK(r.d_hat < improved_upper_bound(3) + 2.0);
  const auto again = threshold_bisect(20, 3, 100, 0.5, 3);
  CHECK(again.d_hat == r.d_hat);
  CHECK_THROWS_AS(threshold_bisect(20, 3, 100, 1.0, 3), InvalidParameter);
}

TEST_CASE("check_available_colors") {
  const auto none = check_available_colors(4, 0, 1000, 1);
  CHECK(none.tv == 0.0);
  CHECK(none.empirical.back() == 1.0);

  const auto r = check_available_colors(4, 3, 200'000, 2);
  CHECK(r.tv < 0.01);
  CHECK(r.tv_center_zero < 0.015);
  CHECK(r.tv_center_other < 0.015);
  CHECK(r.tv_between_splits < 0.02);
  double total = 0;
  for (double p : r.empirical) total += p;
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("check_edge_indep") {
  const auto two = check_edge_indep(2, 1000, 1);
  CHECK(two.statistic == 0.0);
  CHECK(two.p_value == 1.0);
  const auto r = check_edge_indep(4, 100'000, 4);
  CHECK(r.p_value > 1e-3);
  CHECK(r.dof > 0);
  const auto loop = check_edge_indep(4, 100'000, 5, true);
  CHECK(loop.p_value > 1e-3);
}

TEST_CASE("check_degree_model") {
  const auto single = check_degree_model({1, 7, 3, 0}, 100, 1);
  CHECK(single.histogram[14] == 100);
  CHECK(single.sums_conserved);
  const auto r = check_degree_model({10, 15, 3, 0}, 100'000, 6);
  CHECK(r.sums_conserved);
  CHECK(r.fit.p_value > 1e-3);
}

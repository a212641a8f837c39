#include "pkcol/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "pkcol/errors.hpp"
#include "pkcol/moments.hpp"
#include "pkcol/parallel.hpp"
#include "pkcol/solver.hpp"

namespace pkcol {

void TrialSpec::validate() const {
  params.validate();
  if (trials < 1) throw InvalidParameter("trials must be positive");
}

Estimate CurvePoint::estimate() const {
  Estimate e;
  e.trials = trials;
  e.mean = p_hat;
  e.std_error = trials > 0 ? std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(trials)) : 0.0;
  return e;
}

namespace {

enum class Outcome : std::uint8_t { uncolorable, colorable, excluded };

CurvePoint summarize(const ModelParams& params, const std::vector<Outcome>& outcomes) {
  CurvePoint point;
  point.d = params.d();
  point.m = params.m;
  for (auto o : outcomes) {
    if (o == Outcome::excluded) {
      ++point.excluded;
      continue;
    }
    ++point.trials;
    if (o == Outcome::colorable) ++point.colorable;
  }
  if (point.trials > 0) {
    point.p_hat = static_cast<double>(point.colorable) / static_cast<double>(point.trials);
    const auto ci = wilson_interval(point.colorable, point.trials);
    point.ci_lo = ci.lo;
    point.ci_hi = ci.hi;
  } else {
    point.ci_lo = 0.0;
    point.ci_hi = 1.0;
  }
  return point;
}

double big_to_double(const BigInt& x) { return x.convert_to<double>(); }

}  // namespace

CurvePoint mc_colorable(const TrialSpec& spec, const RunOptions& options) {
  spec.validate();
  std::vector<Outcome> outcomes(static_cast<std::size_t>(spec.trials));
  SolverOptions solver;
  solver.node_budget = options.node_budget;
  parallel_for(spec.trials, options.threads, [&](std::int64_t t) {
    Rng rng(derive_seed(spec.master_seed, static_cast<std::uint64_t>(t)));
    const auto g = sample_graph(spec.params, rng);
    Outcome o;
    try {
      o = decide(g, solver).status == SolveStatus::colorable ? Outcome::colorable : Outcome::uncolorable;
    } catch (const BudgetExhausted&) {
      o = Outcome::excluded;
    }
    outcomes[static_cast<std::size_t>(t)] = o;
  });
  return summarize(spec.params, outcomes);
}

std::vector<CurvePoint> colorability_curve(int n, int k, const std::vector<double>& degrees,
                                           std::int64_t trials, std::uint64_t seed,
                                           const RunOptions& options) {
  std::vector<CurvePoint> curve;
  curve.reserve(degrees.size());
  for (double d : degrees) {
    TrialSpec spec;
    spec.params = ModelParams::from_degree(n, d, k, seed);
    spec.trials = trials;
    spec.master_seed = derive_seed(seed, static_cast<std::uint64_t>(spec.params.m));
    curve.push_back(mc_colorable(spec, options));
  }
  return curve;
}

MomentEstimates mc_moments(const TrialSpec& spec, const RunOptions& options) {
  spec.validate();
  const auto count = static_cast<std::size_t>(spec.trials);
  std::vector<double> xs(count), x2s(count), zs(count);
  std::vector<std::uint8_t> violated(count, 0), loop_deficit(count, 0);
  parallel_for(spec.trials, options.threads, [&](std::int64_t t) {
    Rng rng(derive_seed(spec.master_seed, static_cast<std::uint64_t>(t)));
    const auto g = sample_graph(spec.params, rng);
    const BigInt x = count_colorings(g);
    const Rational z = z_weight(g);
    const bool colorable = decide(g).status == SolveStatus::colorable;
    const auto i = static_cast<std::size_t>(t);
    xs[i] = big_to_double(x);
    x2s[i] = big_to_double(BigInt(x * x));
    zs[i] = to_double(z);
    bool has_loop = false;
    for (const auto& e : g.edges()) has_loop = has_loop || e.is_loop();
    // Z >= 1 is only guaranteed without self-loops; a loop can leave more
    // colors nominally available than actually keep the coloring proper.
    const bool z_short = colorable && z < 1;
    violated[i] = (colorable != (x >= 1) || colorable != (z > 0) || (z_short && !has_loop)) ? 1 : 0;
    loop_deficit[i] = (z_short && has_loop) ? 1 : 0;
  });

  auto make = [&](const std::vector<double>& v) {
    const auto ms = mean_stderr(v);
    Estimate e;
    e.mean = ms.mean;
    e.std_error = ms.std_error;
    e.trials = spec.trials;
    return e;
  };
  MomentEstimates out;
  out.x = make(xs);
  out.x2 = make(x2s);
  out.z = make(zs);
  out.x.reference = std::exp(expected_X_log(spec.params.n, spec.params.m, spec.params.k));
  out.x2.reference = std::exp(expected_X2_log(spec.params.n, spec.params.m, spec.params.k));
  for (auto v : violated) out.identity_violations += v;
  for (auto v : loop_deficit) out.loop_z_below_one += v;
  return out;
}

std::vector<std::string> monotonicity_violations(const std::vector<CurvePoint>& curve) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < curve.size(); ++i) {
    const auto& a = curve[i - 1];
    const auto& b = curve[i];
    if (b.d > a.d && b.ci_lo > a.ci_hi) {
      std::ostringstream msg;
      msg << "colorability rises from d=" << a.d << " (p=" << a.p_hat << ") to d=" << b.d
          << " (p=" << b.p_hat << ") beyond interval overlap";
      out.push_back(msg.str());
    }
  }
  return out;
}

ThresholdResult threshold_bisect(int n, int k, std::int64_t trials_per_point, double target,
                                 std::uint64_t seed, const RunOptions& options) {
  if (!(target > 0.0 && target < 1.0)) throw InvalidParameter("target must lie in (0, 1)");
  if (n < 1) throw InvalidParameter("n must be positive");
  if (k < 2) throw InvalidParameter("k must be at least 2");
  if (trials_per_point < 1) throw InvalidParameter("trials must be positive");

  std::map<std::int64_t, CurvePoint> evaluated;  // keyed by m
  auto evaluate = [&](double d) -> const CurvePoint& {
    const auto params = ModelParams::from_degree(n, d, k, seed);
    auto it = evaluated.find(params.m);
    if (it != evaluated.end()) return it->second;
    TrialSpec spec;
    spec.params = params;
    spec.trials = trials_per_point;
    spec.master_seed = derive_seed(seed, static_cast<std::uint64_t>(params.m));
    return evaluated.emplace(params.m, mc_colorable(spec, options)).first->second;
  };

  ThresholdResult result;
  double lo = 0.0;
  evaluate(lo);
  double hi = first_moment_bound(std::max(k, 2)) + 1.0;
  for (int grow = 0; grow < 6 && !(evaluate(hi).ci_hi < target); ++grow) hi *= 2.0;
  if (!(evaluate(hi).ci_hi < target))
    result.warnings.push_back("upper bracket never fell below the target");

  const double resolution = 2.0 / n;
  double d_hat = 0.5 * (lo + hi);
  bool settled = false;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    const auto& point = evaluate(mid);
    if (point.ci_lo > target) {
      lo = mid;
    } else if (point.ci_hi < target) {
      hi = mid;
    } else {
      d_hat = mid;
      settled = true;
      break;
    }
  }
  if (!settled) d_hat = 0.5 * (lo + hi);

  result.d_hat = d_hat;
  result.bracket_lo = lo;
  result.bracket_hi = hi;
  for (const auto& [m, point] : evaluated) result.curve.push_back(point);
  for (auto& w : monotonicity_violations(result.curve)) result.warnings.push_back(std::move(w));
  return result;
}

AvailableColorsReport check_available_colors(int k, int degree, std::int64_t trials, std::uint64_t seed) {
  if (k < 2 || k > kMaxSolverColors) throw InvalidParameter("k out of range");
  if (degree < 0) throw InvalidParameter("degree must be nonnegative");
  if (trials < 1) throw InvalidParameter("trials must be positive");

  Rng rng(seed);
  const auto kk = static_cast<std::size_t>(k);
  std::vector<double> all(kk, 0.0), zero(kk, 0.0), other(kk, 0.0);
  std::int64_t n_zero = 0, n_other = 0;
  Coloring sigma(static_cast<std::size_t>(degree) + 1);
  for (std::int64_t t = 0; t < trials; ++t) {
    // Uniform sigma, then each leaf -> center permutation conditioned on its
    // edge being satisfied: the joint law of (star, sigma) given properness.
    for (auto& c : sigma) c = static_cast<Color>(rng.below(kk));
    std::vector<DecoratedEdge> edges;
    edges.reserve(static_cast<std::size_t>(degree));
    for (int leaf = 1; leaf <= degree; ++leaf) {
      Permutation pi = sample_perm(k, rng);
      while (pi.at(sigma[static_cast<std::size_t>(leaf)]) == sigma[0]) pi = sample_perm(k, rng);
      edges.push_back({leaf, 0, std::move(pi)});
    }
    const DecoratedGraph star(degree + 1, k, std::move(edges));
    const auto c = static_cast<std::size_t>(available_colors(star, sigma, 0));
    all[c - 1] += 1.0;
    if (sigma[0] == 0) {
      zero[c - 1] += 1.0;
      ++n_zero;
    } else {
      other[c - 1] += 1.0;
      ++n_other;
    }
  }

  AvailableColorsReport report;
  report.k = k;
  report.degree = degree;
  report.trials = trials;
  report.reference.resize(kk);
  for (int c = 1; c <= k; ++c) report.reference[static_cast<std::size_t>(c - 1)] = to_double(exact_Q(degree, k, c));
  auto normalize = [](std::vector<double> v, std::int64_t total) {
    if (total > 0)
      for (auto& x : v) x /= static_cast<double>(total);
    return v;
  };
  report.empirical = normalize(all, trials);
  const auto p_zero = normalize(zero, n_zero);
  const auto p_other = normalize(other, n_other);
  report.tv = total_variation(report.empirical, report.reference);
  report.tv_center_zero = n_zero > 0 ? total_variation(p_zero, report.reference) : 0.0;
  report.tv_center_other = n_other > 0 ? total_variation(p_other, report.reference) : 0.0;
  report.tv_between_splits = (n_zero > 0 && n_other > 0) ? total_variation(p_zero, p_other) : 0.0;
  return report;
}

ChiSquareReport check_edge_indep(int k, std::int64_t trials, std::uint64_t seed, bool self_loop) {
  if (k < 2) throw InvalidParameter("k must be at least 2");
  if (trials < 1) throw InvalidParameter("trials must be positive");
  Rng rng(seed);
  const int side = k - 1;
  std::vector<double> table(static_cast<std::size_t>(side * side), 0.0);
  const int n = self_loop ? 1 : 2;
  const Vertex u = 0;
  const Vertex v = self_loop ? 0 : 1;
  Coloring sigma(static_cast<std::size_t>(n));
  for (std::int64_t t = 0; t < trials; ++t) {
    DecoratedGraph g(n, k);
    do {
      for (auto& c : sigma) c = static_cast<Color>(rng.below(static_cast<std::uint64_t>(k)));
      g = DecoratedGraph(n, k, {{u, v, sample_perm(k, rng)}});
    } while (!is_proper(g, sigma));
    const auto& pi = g.edges().front().pi;
    const Color su = sigma[static_cast<std::size_t>(u)];
    const Color sv = sigma[static_cast<std::size_t>(v)];
    const Color q = pi.at(su);
    const Color q_inv = pi.inverse().at(sv);
    // Ranks inside [k] - sigma(v) and [k] - sigma(u).
    const int a = q - (q > sv ? 1 : 0);
    const int b = q_inv - (q_inv > su ? 1 : 0);
    table[static_cast<std::size_t>(a * side + b)] += 1.0;
  }
  const std::vector<double> expected(table.size(), static_cast<double>(trials) / static_cast<double>(table.size()));
  ChiSquareReport report;
  report.trials = trials;
  report.statistic = chi_square_statistic(table, expected);
  report.dof = static_cast<int>(table.size()) - 1;
  report.p_value = chi_square_p_value(report.statistic, report.dof);
  return report;
}

DegreeModelReport check_degree_model(const ModelParams& params, std::int64_t trials, std::uint64_t seed) {
  params.validate();
  if (trials < 1) throw InvalidParameter("trials must be positive");
  Rng rng(seed);
  const std::int64_t balls = 2 * params.m;
  DegreeModelReport report;
  report.histogram.assign(static_cast<std::size_t>(balls) + 1, 0);
  for (std::int64_t t = 0; t < trials; ++t) {
    const auto g = sample_graph(params, rng);
    const auto deg = degree_sequence(g);
    std::int64_t sum = 0;
    for (int x : deg) sum += x;
    if (sum != balls) report.sums_conserved = false;
    ++report.histogram[static_cast<std::size_t>(deg[0])];
  }
  std::vector<double> observed, expected;
  for (std::int64_t x = 0; x <= balls; ++x) {
    observed.push_back(static_cast<double>(report.histogram[static_cast<std::size_t>(x)]));
    expected.push_back(static_cast<double>(trials) * binomial_pmf(balls, 1.0 / params.n, x));
  }
  const auto [obs, exp] = pool_sparse_cells(observed, expected);
  report.fit.trials = trials;
  report.fit.statistic = chi_square_statistic(obs, exp);
  report.fit.dof = static_cast<int>(obs.size()) - 1;
  report.fit.p_value = chi_square_p_value(report.fit.statistic, report.fit.dof);
  return report;
}

}  // namespace pkcol

#include "pkcol/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pkcol/errors.hpp"
#include "pkcol/experiments.hpp"
#include "pkcol/instance_io.hpp"
#include "pkcol/iso_cube.hpp"
#include "pkcol/moments.hpp"
#include "pkcol/solver.hpp"

namespace pkcol::cli {

namespace {

using nlohmann::json;

enum class Format { csv, json };

// Destination for the single result an invocation writes.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty()) return;
    std::filesystem::path target(path);
    if (target.is_relative()) {
      if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) target = std::filesystem::path(dir) / target;
    }
    file_ = std::make_unique<std::ofstream>(target);
    if (!*file_) throw std::runtime_error("cannot open " + target.string() + " for writing");
    stream_ = file_.get();
  }

  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

// CSV cells print doubles with round-trip precision so that CSV and JSON
// carry identical values.
std::string cell(double x) {
  if (std::isnan(x)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<json>> rows;

  void write(std::ostream& os, Format format) const {
    if (format == Format::json) {
      os << to_json().dump(2) << '\n';
      return;
    }
    for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        const auto& v = row[i];
        if (v.is_null()) continue;
        if (v.is_number_float()) os << cell(v.get<double>());
        else if (v.is_number_integer()) os << v.get<std::int64_t>();
        else if (v.is_string()) os << v.get<std::string>();
        else os << v.dump();
      }
      os << '\n';
    }
  }

  json to_json() const {
    json out = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < header.size(); ++i) obj[header[i]] = row[i];
      out.push_back(std::move(obj));
    }
    return out;
  }
};

Table curve_table(const std::vector<CurvePoint>& curve) {
  Table t{{"d", "m", "trials", "colorable", "p_hat", "ci_lo", "ci_hi"}, {}};
  for (const auto& p : curve) t.rows.push_back({p.d, p.m, p.trials, p.colorable, p.p_hat, p.ci_lo, p.ci_hi});
  return t;
}

json scan_report_json(const ScanReport& r) {
  json maxima = json::array();
  for (const auto& [z, v] : r.local_maxima) maxima.push_back({{"zeta", z}, {"phi", v}});
  return {{"k", r.k},
          {"d", r.d},
          {"grid_resolution", r.grid_resolution},
          {"zeta_max", r.zeta_max},
          {"max_value", r.max_value},
          {"local_maxima", maxima},
          {"curvature_at_center", r.curvature_at_center},
          {"condition_holds", r.condition_holds}};
}

json iso_report_json(const IsoReport& r) {
  json j = {{"k", r.k},
            {"n", r.n},
            {"subsets_checked", r.subsets_checked},
            {"min_Z", to_string(r.min_z)},
            {"all_ge_one", r.all_ge_one},
            {"all_monotone", r.all_monotone}};
  if (r.argmin) {
    json cells = json::array();
    for (std::uint64_t c = 0; c < r.argmin->cells(); ++c)
      if (r.argmin->contains(c)) cells.push_back(r.argmin->decode(c));
    j["argmin"] = cells;
  }
  return j;
}

json solve_json(const SolveResult& r) {
  json j = {{"status", to_string(r.status)}};
  if (r.witness) j["witness"] = *r.witness;
  if (r.count) j["count"] = r.count->str();
  j["nodes"] = r.nodes_expanded;
  return j;
}

Format parse_format(const std::string& s) { return s == "json" ? Format::json : Format::csv; }

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Permuted k-colorability: random instances, exact solving, moment bounds, checks", "pkcol"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  // Shared values; each subcommand binds the ones it uses.
  int n = 0, k = 3, k_min = 3, k_max = 50, resolution = 100000, rows = 1001, threads = 1, degree = 4;
  std::int64_t m = 0, trials = 1000;
  double d = 0.0, d_min = 0.0, d_max = 0.0, d_step = 0.5, tolerance = 1e-10, target = 0.5;
  double cap = 24.0;
  std::uint64_t seed = 0, budget = 0;
  std::string in_path, out_path, report_path, format_name = "csv", mode;

  auto add_out = [&](CLI::App* sub) { sub->add_option("--out", out_path, "Output file (default: stdout)"); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "Output format")->check(CLI::IsMember({"csv", "json"}));
  };
  auto add_degree_or_edges = [&](CLI::App* sub) {
    auto* mo = sub->add_option("--m", m, "Edge count");
    auto* dopt = sub->add_option("--d", d, "Average degree; m = round(d*n/2), halves away from zero");
    mo->excludes(dopt);
    return std::pair{mo, dopt};
  };

  auto* gen = app.add_subcommand("gen", "Sample a decorated multigraph G~(n,m) as instance JSON");
  gen->add_option("--n", n, "Vertices")->required();
  gen->add_option("--k", k, "Colors");
  auto gen_md = add_degree_or_edges(gen);
  gen->add_option("--seed", seed, "RNG seed");
  add_out(gen);

  auto* solve = app.add_subcommand("solve", "Decide permuted k-colorability of an instance");
  solve->add_option("--in", in_path, "Instance JSON")->required();
  solve->add_option("--budget", budget, "Search node budget (0 = unlimited)");
  add_out(solve);

  auto* count = app.add_subcommand("count", "Count permuted k-colorings exactly");
  count->add_option("--in", in_path, "Instance JSON")->required();
  count->add_option("--cap", cap, "Refuse when n*log2(k) exceeds this");
  add_out(count);

  auto* zweight = app.add_subcommand("zweight", "Exact weighted count Z of an instance");
  zweight->add_option("--in", in_path, "Instance JSON")->required();
  zweight->add_option("--cap", cap, "Refuse when n*log2(k) exceeds this");
  add_out(zweight);

  auto* bounds = app.add_subcommand("bounds", "Threshold bounds per k");
  bounds->add_option("--k-min", k_min, "Smallest k")->check(CLI::Range(3, 1000000));
  bounds->add_option("--k-max", k_max, "Largest k");
  bounds->add_option("--tolerance", tolerance, "Root tolerance");
  add_format(bounds);
  add_out(bounds);

  auto* scan = app.add_subcommand("scan-phi", "Scan the second-moment rate phi and its upper bound psi");
  scan->add_option("--k", k, "Colors")->required();
  scan->add_option("--d", d, "Average degree")->required();
  scan->add_option("--resolution", resolution, "Grid intervals");
  scan->add_option("--tolerance", tolerance, "Golden-section refinement tolerance");
  scan->add_option("--rows", rows, "Sampled rows in the CSV table");
  scan->add_option("--report", report_path, "Also write the JSON scan report here (csv format)");
  add_format(scan);
  add_out(scan);

  auto* mc = app.add_subcommand("mc", "Monte Carlo colorability or moment estimates");
  mc->add_option("--mode", mode, "colorable or moments")->check(CLI::IsMember({"colorable", "moments"}));
  mc->add_option("--n", n, "Vertices")->required();
  mc->add_option("--k", k, "Colors");
  auto mc_md = add_degree_or_edges(mc);
  auto* dmin_opt = mc->add_option("--d-min", d_min, "Curve start degree");
  auto* dmax_opt = mc->add_option("--d-max", d_max, "Curve end degree");
  mc->add_option("--d-step", d_step, "Curve degree step");
  dmin_opt->needs(dmax_opt);
  dmax_opt->needs(dmin_opt);
  mc->add_option("--trials", trials, "Trials per point");
  mc->add_option("--seed", seed, "Master seed");
  mc->add_option("--threads", threads, "Worker threads");
  mc->add_option("--budget", budget, "Per-trial search node budget (0 = default)");
  add_format(mc);
  add_out(mc);

  auto* threshold = app.add_subcommand("threshold", "Bisect the degree where colorability crosses a target");
  threshold->add_option("--n", n, "Vertices")->required();
  threshold->add_option("--k", k, "Colors");
  threshold->add_option("--trials", trials, "Trials per point");
  threshold->add_option("--target", target, "Crossing probability");
  threshold->add_option("--seed", seed, "Master seed");
  threshold->add_option("--threads", threads, "Worker threads");
  threshold->add_option("--budget", budget, "Per-trial search node budget (0 = default)");
  add_format(threshold);
  add_out(threshold);

  auto* iso = app.add_subcommand("iso-check", "Check Z(S) >= 1 and thickening monotonicity on [k]^n");
  iso->add_option("--k", k, "Side length")->required();
  iso->add_option("--n", n, "Dimension")->required();
  iso->add_option("--mode", mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  iso->add_option("--trials", trials, "Random subsets");
  iso->add_option("--seed", seed, "RNG seed");
  add_out(iso);

  auto* lemmas = app.add_subcommand("lemma-checks", "Distributional checks of the available-color model");
  lemmas->add_option("--k", k, "Colors");
  lemmas->add_option("--deg", degree, "Star degree for the available-colors check");
  lemmas->add_option("--n", n, "Vertices for the degree check");
  lemmas->add_option("--m", m, "Edges for the degree check");
  lemmas->add_option("--trials", trials, "Trials per check");
  lemmas->add_option("--seed", seed, "RNG seed");
  add_format(lemmas);
  add_out(lemmas);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  const Format format = parse_format(format_name);
  auto resolve_params = [&](auto md) {
    if (n < 1) throw InvalidParameter("--n must be positive");
    if (*md.second) return ModelParams::from_degree(n, d, k, seed);
    if (!*md.first) throw InvalidParameter("give either --m or --d");
    ModelParams p;
    p.n = n;
    p.m = m;
    p.k = k;
    p.seed = seed;
    p.validate();
    return p;
  };
  RunOptions run;
  run.threads = threads;
  if (budget > 0) run.node_budget = budget;

  try {
    if (app.got_subcommand(gen)) {
      const auto params = resolve_params(gen_md);
      Sink sink(out_path, out);
      sink.stream() << dump_instance(sample_graph(params)) << '\n';
    } else if (app.got_subcommand(solve)) {
      SolverOptions options;
      if (budget > 0) options.node_budget = budget;
      const auto result = decide(load_instance(in_path), options);
      Sink sink(out_path, out);
      sink.stream() << solve_json(result).dump() << '\n';
    } else if (app.got_subcommand(count)) {
      SolverOptions options;
      options.state_cap_log2 = cap;
      const auto result = solve_and_count(load_instance(in_path), options);
      Sink sink(out_path, out);
      sink.stream() << solve_json(result).dump() << '\n';
    } else if (app.got_subcommand(zweight)) {
      SolverOptions options;
      options.state_cap_log2 = cap;
      const auto g = load_instance(in_path);
      const Rational z = z_weight(g, options);
      json j = {{"z", to_string(z)}, {"z_float", to_double(z)}, {"colorable", z > 0}};
      j["log_z"] = z > 0 ? json(std::log(to_double(z))) : json(nullptr);
      Sink sink(out_path, out);
      sink.stream() << j.dump() << '\n';
    } else if (app.got_subcommand(bounds)) {
      Table t{{"k", "fm_upper", "improved_upper", "asym_lower", "asym_upper"}, {}};
      for (const auto& r : bounds_table(k_min, k_max, tolerance))
        t.rows.push_back({r.k, r.fm_upper, r.improved_upper, r.asymptotic_lower, r.asymptotic_upper});
      Sink sink(out_path, out);
      t.write(sink.stream(), format);
    } else if (app.got_subcommand(scan)) {
      const MomentParams params{k, d};
      ScanOptions options;
      options.resolution = resolution;
      options.refine_tolerance = tolerance;
      const auto report = scan_second_moment(params, options);
      Table t{{"zeta", "phi", "psi"}, {}};
      for (const auto& r : phi_table(params, rows)) t.rows.push_back({r.zeta, r.phi, r.psi});
      Sink sink(out_path, out);
      if (format == Format::json) {
        json j = scan_report_json(report);
        j["rows"] = t.to_json();
        sink.stream() << j.dump(2) << '\n';
      } else {
        t.write(sink.stream(), Format::csv);
        if (!report_path.empty()) {
          Sink report_sink(report_path, err);
          report_sink.stream() << scan_report_json(report).dump(2) << '\n';
        }
      }
    } else if (app.got_subcommand(mc)) {
      if (mode.empty()) mode = "colorable";
      if (mode == "moments") {
        TrialSpec spec{resolve_params(mc_md), trials, seed};
        const auto est = mc_moments(spec, run);
        Table t{{"quantity", "mean", "stderr", "reference"}, {}};
        auto row = [&](const char* name, const Estimate& e) {
          t.rows.push_back({name, e.mean, e.std_error, e.reference ? json(*e.reference) : json(nullptr)});
        };
        row("X", est.x);
        row("X2", est.x2);
        row("Z", est.z);
        if (est.identity_violations > 0)
          err << "warning: " << est.identity_violations << " trials broke colorable <=> X>=1 <=> Z>0\n";
        if (est.loop_z_below_one > 0)
          err << "note: " << est.loop_z_below_one << " colorable trials with a self-loop had Z < 1\n";
        Sink sink(out_path, out);
        t.write(sink.stream(), format);
      } else {
        std::vector<CurvePoint> curve;
        if (*dmin_opt) {
          if (!(d_step > 0.0)) throw InvalidParameter("--d-step must be positive");
          std::vector<double> degrees;
          for (int i = 0; d_min + i * d_step <= d_max + 1e-12; ++i) degrees.push_back(d_min + i * d_step);
          curve = colorability_curve(n, k, degrees, trials, seed, run);
        } else {
          TrialSpec spec{resolve_params(mc_md), trials, seed};
          curve.push_back(mc_colorable(spec, run));
        }
        for (const auto& p : curve)
          if (p.excluded > 0) err << "note: d=" << p.d << " excluded " << p.excluded << " budget-exhausted trials\n";
        Sink sink(out_path, out);
        curve_table(curve).write(sink.stream(), format);
      }
    } else if (app.got_subcommand(threshold)) {
      const auto result = threshold_bisect(n, k, trials, target, seed, run);
      for (const auto& w : result.warnings) err << "warning: " << w << '\n';
      Sink sink(out_path, out);
      if (format == Format::json) {
        json j = {{"d_hat", result.d_hat},
                  {"bracket", {result.bracket_lo, result.bracket_hi}},
                  {"curve", curve_table(result.curve).to_json()},
                  {"warnings", result.warnings}};
        sink.stream() << j.dump(2) << '\n';
      } else {
        err << "d_hat=" << cell(result.d_hat) << " bracket=[" << cell(result.bracket_lo) << ", "
            << cell(result.bracket_hi) << "]\n";
        curve_table(result.curve).write(sink.stream(), Format::csv);
      }
    } else if (app.got_subcommand(iso)) {
      if (mode.empty()) mode = "exhaustive";
      const auto report = mode == "exhaustive" ? exhaustive_check(k, n) : random_check(k, n, trials, seed);
      Sink sink(out_path, out);
      sink.stream() << iso_report_json(report).dump(2) << '\n';
    } else if (app.got_subcommand(lemmas)) {
      Table t{{"check", "metric", "value", "trials"}, {}};
      const auto avail = check_available_colors(k, degree, trials, seed);
      t.rows.push_back({"available_colors", "tv", avail.tv, trials});
      t.rows.push_back({"available_colors", "tv_between_splits", avail.tv_between_splits, trials});
      const auto edge = check_edge_indep(k, trials, derive_seed(seed, 1));
      t.rows.push_back({"edge_indep", "chi_square", edge.statistic, trials});
      t.rows.push_back({"edge_indep", "p_value", edge.p_value, trials});
      const auto loop = check_edge_indep(k, trials, derive_seed(seed, 2), true);
      t.rows.push_back({"edge_indep_loop", "chi_square", loop.statistic, trials});
      t.rows.push_back({"edge_indep_loop", "p_value", loop.p_value, trials});
      ModelParams params;
      params.n = n > 0 ? n : 10;
      params.m = m > 0 ? m : 15;
      params.k = k;
      const auto deg = check_degree_model(params, trials, derive_seed(seed, 3));
      t.rows.push_back({"degree_model", "chi_square", deg.fit.statistic, trials});
      t.rows.push_back({"degree_model", "p_value", deg.fit.p_value, trials});
      t.rows.push_back({"degree_model", "sums_conserved", deg.sums_conserved ? 1.0 : 0.0, trials});
      Sink sink(out_path, out);
      t.write(sink.stream(), format);
    }
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace pkcol::cli

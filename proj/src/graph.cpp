#include "pkcol/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <string>

#include "pkcol/errors.hpp"

namespace pkcol {

DecoratedGraph::DecoratedGraph(int n, int k, std::vector<DecoratedEdge> edges)
    : n_(n), k_(k), edges_(std::move(edges)) {
  if (n_ < 1) throw InvalidParameter("graph needs n >= 1");
  if (k_ < 1) throw InvalidParameter("graph needs k >= 1");
  for (const auto& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw InvalidParameter("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                             std::to_string(e.v) + ")");
    if (e.pi.size() != k_) throw InvalidParameter("edge permutation has wrong k");
  }
}

ModelParams ModelParams::from_degree(int n, double d, int k, std::uint64_t seed) {
  if (n < 1) throw InvalidParameter("n must be positive");
  if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidParameter("d must be a nonnegative real");
  ModelParams p;
  p.n = n;
  p.m = std::llround(d * n / 2.0);
  p.k = k;
  p.seed = seed;
  p.validate();
  return p;
}

void ModelParams::validate() const {
  if (n < 1) throw InvalidParameter("n must be positive");
  if (m < 0) throw InvalidParameter("m must be nonnegative");
  if (k < 2) throw InvalidParameter("k must be at least 2");
}

DecoratedGraph sample_graph(const ModelParams& params, Rng& rng) {
  params.validate();
  std::vector<DecoratedEdge> edges;
  edges.reserve(static_cast<std::size_t>(params.m));
  const auto n = static_cast<std::uint64_t>(params.n);
  for (std::int64_t i = 0; i < params.m; ++i) {
    const auto u = static_cast<Vertex>(rng.below(n));
    const auto v = static_cast<Vertex>(rng.below(n));
    edges.push_back({u, v, sample_perm(params.k, rng)});
  }
  return DecoratedGraph(params.n, params.k, std::move(edges));
}

DecoratedGraph sample_graph(const ModelParams& params) {
  Rng rng(params.seed);
  return sample_graph(params, rng);
}

std::vector<int> degree_sequence(const DecoratedGraph& g) {
  std::vector<int> deg(static_cast<std::size_t>(g.n()), 0);
  for (const auto& e : g.edges()) {
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  return deg;
}

bool is_simple(const DecoratedGraph& g) {
  std::set<std::pair<Vertex, Vertex>> seen;
  for (const auto& e : g.edges()) {
    if (e.is_loop()) return false;
    if (!seen.insert(std::minmax(e.u, e.v)).second) return false;
  }
  return true;
}

namespace {

struct Incidence {
  Vertex other;
  std::size_t edge;
};

}  // namespace

std::vector<Permutation> unwind_tree(const DecoratedGraph& g) {
  const auto n = static_cast<std::size_t>(g.n());

  // Union-find rejects loops, parallel edges and cycles in one pass.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<Incidence>> adj(n);
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    const auto& e = g.edges()[i];
    const auto ru = find(static_cast<std::size_t>(e.u));
    const auto rv = find(static_cast<std::size_t>(e.v));
    if (ru == rv) throw NotAForest("edge " + std::to_string(i) + " closes a cycle");
    parent[ru] = rv;
    adj[static_cast<std::size_t>(e.u)].push_back({e.v, i});
    adj[static_cast<std::size_t>(e.v)].push_back({e.u, i});
  }

  std::vector<std::optional<Permutation>> rho(n);
  for (std::size_t root = 0; root < n; ++root) {
    if (rho[root]) continue;
    rho[root] = Permutation::identity(g.k());
    std::queue<std::size_t> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const auto x = frontier.front();
      frontier.pop();
      for (const auto& [other, idx] : adj[x]) {
        const auto y = static_cast<std::size_t>(other);
        if (rho[y]) continue;
        const auto& e = g.edges()[idx];
        // rho_v o pi = rho_u.
        if (static_cast<std::size_t>(e.u) == x)
          rho[y] = compose_perm(*rho[x], e.pi.inverse());
        else
          rho[y] = compose_perm(*rho[x], e.pi);
        frontier.push(y);
      }
    }
  }

  std::vector<Permutation> out;
  out.reserve(n);
  for (auto& r : rho) out.push_back(std::move(*r));
  return out;
}

DecoratedGraph coboundary_graph(int n, const std::vector<std::pair<Vertex, Vertex>>& skeleton,
                                int k, Rng& rng) {
  if (n < 1) throw InvalidParameter("coboundary_graph needs n >= 1");
  std::vector<Permutation> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) labels.push_back(sample_perm(k, rng));
  std::vector<DecoratedEdge> edges;
  edges.reserve(skeleton.size());
  for (const auto& [u, v] : skeleton) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw InvalidParameter("skeleton endpoint out of range");
    const auto& au = labels[static_cast<std::size_t>(u)];
    const auto& av = labels[static_cast<std::size_t>(v)];
    edges.push_back({u, v, compose_perm(av, au.inverse())});
  }
  return DecoratedGraph(n, k, std::move(edges));
}

}  // namespace pkcol

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pkcol/permutation.hpp"
#include "pkcol/rng.hpp"

namespace pkcol {

using Vertex = int;

/// Edge oriented u -> v. The permutation maps the color of u to the color
/// it forbids at v; the reverse orientation uses pi.inverse().
struct DecoratedEdge {
  Vertex u;
  Vertex v;
  Permutation pi;

  bool is_loop() const { return u == v; }
  friend bool operator==(const DecoratedEdge&, const DecoratedEdge&) = default;
};

/// Multigraph on n vertices whose edges carry permutations of k colors.
/// Self-loops and parallel edges are kept; edge order is significant.
class DecoratedGraph {
 public:
  DecoratedGraph(int n, int k, std::vector<DecoratedEdge> edges = {});

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t m() const { return edges_.size(); }
  const std::vector<DecoratedEdge>& edges() const { return edges_; }

  friend bool operator==(const DecoratedGraph&, const DecoratedGraph&) = default;

 private:
  int n_;
  int k_;
  std::vector<DecoratedEdge> edges_;
};

/// Parameters of the with-replacement model G~(n, m) with k colors.
struct ModelParams {
  int n = 1;
  std::int64_t m = 0;
  int k = 3;
  std::uint64_t seed = 0;

  double d() const { return 2.0 * static_cast<double>(m) / n; }

  /// m = llround(d * n / 2), i.e. halves round away from zero.
  static ModelParams from_degree(int n, double d, int k, std::uint64_t seed);

  void validate() const;
};

/// m edges; for each edge draw u, then v (uniform over vertices), then a
/// uniform permutation.
DecoratedGraph sample_graph(const ModelParams& params, Rng& rng);
DecoratedGraph sample_graph(const ModelParams& params);

/// A self-loop adds 2 to its vertex.
std::vector<int> degree_sequence(const DecoratedGraph& g);

/// No self-loops and no two edges on the same unordered pair.
bool is_simple(const DecoratedGraph& g);

/// Per-vertex relabelings rho such that rho[v] o pi o rho[u]^{-1} is the
/// identity for every edge (u, v, pi). Then sigma is a permuted coloring iff
/// v -> rho[v](sigma(v)) is a proper coloring of the underlying forest.
/// Each component is rooted at its lowest vertex with rho = identity and
/// filled in breadth-first order. Throws NotAForest on loops, parallel
/// edges or cycles.
std::vector<Permutation> unwind_tree(const DecoratedGraph& g);

/// Decorates `skeleton` with the coboundary of uniform vertex permutations
/// a_0..a_{n-1} (drawn in vertex order): edge (u, v) gets c -> a_v(a_u^{-1}(c)).
/// Permuted colorings then correspond one-to-one to proper colorings of the
/// skeleton via sigma(v) -> a_v^{-1}(sigma(v)).
DecoratedGraph coboundary_graph(int n, const std::vector<std::pair<Vertex, Vertex>>& skeleton,
                                int k, Rng& rng);

}  // namespace pkcol

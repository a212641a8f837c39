#pragma once

// Brute-force references used only by tests. Nothing here calls into the
// solver or moments code paths it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pkcol/exact.hpp"
#include "pkcol/graph.hpp"
#include "pkcol/rng.hpp"

namespace oracle {

using pkcol::BigInt;
using pkcol::DecoratedGraph;
using pkcol::Rational;

// Calls fn(colors) for all k^n colorings in odometer order.
template <typename Fn>
void for_each_coloring(int n, int k, Fn&& fn) {
  std::vector<int> s(static_cast<std::size_t>(n), 0);
  while (true) {
    fn(s);
    int i = 0;
    while (i < n && ++s[static_cast<std::size_t>(i)] == k) s[static_cast<std::size_t>(i++)] = 0;
    if (i == n) return;
  }
}

inline bool proper(const DecoratedGraph& g, const std::vector<int>& s) {
  for (const auto& e : g.edges())
    if (s[static_cast<std::size_t>(e.v)] == e.pi.image()[static_cast<std::size_t>(s[static_cast<std::size_t>(e.u)])])
      return false;
  return true;
}

// Forbidden set read straight off the definition, self-loops forbidding
// both the image and the preimage of v's own color.
inline int available(const DecoratedGraph& g, const std::vector<int>& s, int v) {
  std::vector<bool> forbidden(static_cast<std::size_t>(g.k()), false);
  for (const auto& e : g.edges()) {
    const auto& img = e.pi.image();
    if (e.u == v && e.v == v) {
      const int c = s[static_cast<std::size_t>(v)];
      forbidden[static_cast<std::size_t>(img[static_cast<std::size_t>(c)])] = true;
      for (int x = 0; x < g.k(); ++x)
        if (img[static_cast<std::size_t>(x)] == c) forbidden[static_cast<std::size_t>(x)] = true;
    } else if (e.v == v) {
      forbidden[static_cast<std::size_t>(img[static_cast<std::size_t>(s[static_cast<std::size_t>(e.u)])])] = true;
    } else if (e.u == v) {
      for (int x = 0; x < g.k(); ++x)
        if (img[static_cast<std::size_t>(x)] == s[static_cast<std::size_t>(e.v)]) forbidden[static_cast<std::size_t>(x)] = true;
    }
  }
  int count = 0;
  for (bool f : forbidden) count += f ? 0 : 1;
  return count;
}

inline std::uint64_t count(const DecoratedGraph& g) {
  std::uint64_t total = 0;
  for_each_coloring(g.n(), g.k(), [&](const std::vector<int>& s) { total += proper(g, s) ? 1 : 0; });
  return total;
}

inline Rational z_weight(const DecoratedGraph& g) {
  Rational total = 0;
  for_each_coloring(g.n(), g.k(), [&](const std::vector<int>& s) {
    if (!proper(g, s)) return;
    BigInt product = 1;
    for (int v = 0; v < g.n(); ++v) product *= available(g, s, v);
    total += Rational(BigInt(1), product);
  });
  return total;
}

// Standard proper colorings of a plain graph.
inline std::uint64_t standard_count(int n, int k, const std::vector<std::pair<int, int>>& edges) {
  std::uint64_t total = 0;
  for_each_coloring(n, k, [&](const std::vector<int>& s) {
    for (const auto& [u, v] : edges)
      if (s[static_cast<std::size_t>(u)] == s[static_cast<std::size_t>(v)]) return;
    ++total;
  });
  return total;
}

// Random decorated multigraph with explicit loop/parallel-edge injection.
inline DecoratedGraph random_instance(pkcol::Rng& rng, int n, int k, int m) {
  std::vector<pkcol::DecoratedEdge> edges;
  for (int i = 0; i < m; ++i) {
    int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const auto shape = rng.below(6);
    if (shape == 0 && !edges.empty()) {
      u = edges.back().u;  // parallel to the previous edge
      v = edges.back().v;
    } else if (shape == 1) {
      v = u;  // self-loop
    }
    edges.push_back({u, v, pkcol::sample_perm(k, rng)});
  }
  return DecoratedGraph(n, k, std::move(edges));
}

// Random labelled tree on n vertices: vertex i > 0 attaches to a uniform
// earlier vertex, with the orientation chosen by a coin.
inline DecoratedGraph random_tree(pkcol::Rng& rng, int n, int k) {
  std::vector<pkcol::DecoratedEdge> edges;
  for (int i = 1; i < n; ++i) {
    const int parent = static_cast<int>(rng.below(static_cast<std::uint64_t>(i)));
    if (rng.below(2)) edges.push_back({parent, i, pkcol::sample_perm(k, rng)});
    else edges.push_back({i, parent, pkcol::sample_perm(k, rng)});
  }
  return DecoratedGraph(n, k, std::move(edges));
}

// E[X^2] by enumerating all ordered coloring pairs and summing p(agree/n)^m,
// with p counted over every (u, v, pi) triple for k <= 4.
inline double second_moment_pairs(int n, int m, int k) {
  // Per-edge joint satisfaction probability by overlap class, enumerated
  // over endpoint patterns and all k! permutations.
  std::vector<int> perm(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::vector<std::vector<int>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  double total = 0.0;
  for_each_coloring(n, k, [&](const std::vector<int>& s) {
    for_each_coloring(n, k, [&](const std::vector<int>& t) {
      double sat = 0.0;
      for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
          for (const auto& p : perms) {
            const bool ok_s = s[static_cast<std::size_t>(v)] != p[static_cast<std::size_t>(s[static_cast<std::size_t>(u)])];
            const bool ok_t = t[static_cast<std::size_t>(v)] != p[static_cast<std::size_t>(t[static_cast<std::size_t>(u)])];
            sat += (ok_s && ok_t) ? 1.0 : 0.0;
          }
      const double p = sat / (static_cast<double>(n) * n * static_cast<double>(perms.size()));
      total += std::pow(p, m);
    });
  });
  return total;
}

// Probability that `balls` balls in `bins` bins leave exactly `empty` bins
// empty, by enumerating all placements.
inline Rational occupancy(int balls, int bins, int empty) {
  std::uint64_t hits = 0, total = 0;
  for_each_coloring(std::max(balls, 1), bins, [&](const std::vector<int>& place) {
    if (balls == 0) {
      // Single dummy pass: no balls means every bin is empty.
      return;
    }
    std::vector<bool> used(static_cast<std::size_t>(bins), false);
    for (int b : place) used[static_cast<std::size_t>(b)] = true;
    int e = 0;
    for (bool u : used) e += u ? 0 : 1;
    ++total;
    if (e == empty) ++hits;
  });
  if (balls == 0) return empty == bins ? 1 : 0;
  return Rational(BigInt(hits), BigInt(total));
}

}  // namespace oracle

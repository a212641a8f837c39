#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "pkcol/errors.hpp"
#include "pkcol/graph.hpp"
#include "pkcol/instance_io.hpp"
#include "pkcol/solver.hpp"
#include "pkcol/stats.hpp"

using namespace pkcol;

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(DecoratedGraph(0, 3), InvalidParameter);
  CHECK_THROWS_AS(DecoratedGraph(2, 3, {{0, 2, Permutation::identity(3)}}), InvalidParameter);
  CHECK_THROWS_AS(DecoratedGraph(2, 3, {{0, 1, Permutation::identity(4)}}), InvalidParameter);
}

TEST_CASE("ModelParams") {
  const auto p = ModelParams::from_degree(10, 3.0, 3, 1);
  CHECK(p.m == 15);
  CHECK(p.d() == doctest::Approx(3.0));
  CHECK(ModelParams::from_degree(5, 0.5, 3, 0).m == 1);  // 1.25 -> 1
  CHECK(ModelParams::from_degree(3, 1.0, 3, 0).m == 2);  // 1.5 rounds away from zero
  CHECK_THROWS_AS(ModelParams::from_degree(0, 1.0, 3, 0), InvalidParameter);
  CHECK_THROWS_AS(ModelParams::from_degree(4, -1.0, 3, 0), InvalidParameter);
}

TEST_CASE("sample_graph") {
  SUBCASE("m = 0 gives an edgeless graph") {
    ModelParams p{7, 0, 4, 3};
    const auto g = sample_graph(p);
    CHECK(g.m() == 0);
    CHECK(g.n() == 7);
  }
  SUBCASE("n = 1 forces a self-loop") {
    ModelParams p{1, 1, 3, 11};
    const auto g = sample_graph(p);
    REQUIRE(g.m() == 1);
    CHECK(g.edges()[0].is_loop());
  }
  SUBCASE("identical seed gives identical serialized instance") {
    ModelParams p{20, 30, 4, 77};
    CHECK(dump_instance(sample_graph(p)) == dump_instance(sample_graph(p)));
    ModelParams q = p;
    q.seed = 78;
    CHECK(dump_instance(sample_graph(p)) != dump_instance(sample_graph(q)));
  }
  SUBCASE("self-loop frequency for n = 2, m = 1 is 1/2") {
    constexpr int kSamples = 1'000'000;
    ModelParams p{2, 1, 3, 0};
    Rng rng(31337);
    int loops = 0;
    for (int i = 0; i < kSamples; ++i) loops += sample_graph(p, rng).edges()[0].is_loop() ? 1 : 0;
    const double se = std::sqrt(0.25 / kSamples);
    CHECK(std::abs(loops / double(kSamples) - 0.5) < 5 * se);
  }
}

TEST_CASE("degree_sequence") {
  CHECK(degree_sequence(DecoratedGraph(3, 3)) == std::vector<int>{0, 0, 0});
  CHECK(degree_sequence(DecoratedGraph(2, 3, {{0, 0, Permutation::identity(3)}})) == std::vector<int>{2, 0});
  CHECK(degree_sequence(DecoratedGraph(2, 3, {{0, 1, Permutation::identity(3)}})) == std::vector<int>{1, 1});

  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    ModelParams p{1 + static_cast<int>(rng.below(12)), static_cast<std::int64_t>(rng.below(30)), 3, rng.next()};
    const auto deg = degree_sequence(sample_graph(p));
    CHECK(std::accumulate(deg.begin(), deg.end(), std::int64_t{0}) == 2 * p.m);
  }
}

TEST_CASE("marginal degree of a vertex is Binomial(2m, 1/n)") {
  constexpr int kSamples = 1'000'000;
  ModelParams p{6, 5, 3, 0};
  Rng rng(8);
  std::vector<double> observed(11, 0.0), expected(11, 0.0);
  for (int i = 0; i < kSamples; ++i) observed[static_cast<std::size_t>(degree_sequence(sample_graph(p, rng))[2])] += 1;
  for (int x = 0; x <= 10; ++x) expected[static_cast<std::size_t>(x)] = kSamples * binomial_pmf(10, 1.0 / 6, x);
  const auto [obs, exp] = pool_sparse_cells(observed, expected);
  CHECK(chi_square_p_value(chi_square_statistic(obs, exp), static_cast<int>(obs.size()) - 1) > 1e-3);
}

TEST_CASE("is_simple") {
  const auto id = Permutation::identity(3);
  CHECK(is_simple(DecoratedGraph(3, 3, {{0, 1, id}, {1, 2, id}})));
  CHECK_FALSE(is_simple(DecoratedGraph(3, 3, {{0, 1, id}, {1, 0, id}})));
  CHECK_FALSE(is_simple(DecoratedGraph(3, 3, {{0, 0, id}})));
}

namespace {

// Checks rho[v] o pi o rho[u]^{-1} = id on every edge.
void check_unwound(const DecoratedGraph& g, const std::vector<Permutation>& rho) {
  REQUIRE(rho.size() == static_cast<std::size_t>(g.n()));
  for (const auto& e : g.edges()) {
    const auto conj = compose_perm(compose_perm(rho[static_cast<std::size_t>(e.v)], e.pi),
                                   rho[static_cast<std::size_t>(e.u)].inverse());
    CHECK(conj.is_identity());
  }
}

}  // namespace

TEST_CASE("unwind_tree") {
  SUBCASE("edgeless graph unwinds to identities") {
    const auto rho = unwind_tree(DecoratedGraph(4, 3));
    for (const auto& r : rho) CHECK(r.is_identity());
  }
  SUBCASE("single edge has k(k-1) colorings") {
    const DecoratedGraph g(2, 3, {{0, 1, Permutation({2, 0, 1})}});
    check_unwound(g, unwind_tree(g));
    CHECK(count_colorings(g) == 6);
  }
  SUBCASE("random decorated tree, n = 7, k = 3") {
    Rng rng(17);
    const auto g = oracle::random_tree(rng, 7, 3);
    const auto rho = unwind_tree(g);
    check_unwound(g, rho);
    CHECK(oracle::count(g) == 192);
    CHECK(count_colorings(g) == 192);
  }
  SUBCASE("relabeled colorings are exactly the standard colorings of the forest") {
    Rng rng(23);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + static_cast<int>(rng.below(5));
      auto tree = oracle::random_tree(rng, n, 3);
      // Drop an edge now and then to get a forest.
      auto edges = tree.edges();
      if (rng.below(2) && !edges.empty()) edges.erase(edges.begin() + static_cast<long>(rng.below(edges.size())));
      const DecoratedGraph g(n, 3, edges);
      const auto rho = unwind_tree(g);
      check_unwound(g, rho);
      std::vector<std::pair<int, int>> plain;
      for (const auto& e : g.edges()) plain.emplace_back(e.u, e.v);
      oracle::for_each_coloring(n, 3, [&](const std::vector<int>& s) {
        std::vector<int> relabeled(s.size());
        for (std::size_t v = 0; v < s.size(); ++v) relabeled[v] = rho[v].at(s[v]);
        bool standard = true;
        for (const auto& [u, v] : plain)
          standard = standard && relabeled[static_cast<std::size_t>(u)] != relabeled[static_cast<std::size_t>(v)];
        CHECK(oracle::proper(g, s) == standard);
      });
    }
  }
  SUBCASE("non-forests are rejected") {
    const auto id = Permutation::identity(3);
    CHECK_THROWS_AS(unwind_tree(DecoratedGraph(1, 3, {{0, 0, id}})), NotAForest);
    CHECK_THROWS_AS(unwind_tree(DecoratedGraph(2, 3, {{0, 1, id}, {1, 0, id}})), NotAForest);
    CHECK_THROWS_AS(unwind_tree(DecoratedGraph(3, 3, {{0, 1, id}, {1, 2, id}, {2, 0, id}})), NotAForest);
  }
}

TEST_CASE("coboundary_graph preserves the standard count") {
  Rng rng(5150);
  SUBCASE("triangle, k = 3") {
    const std::vector<std::pair<Vertex, Vertex>> tri{{0, 1}, {1, 2}, {2, 0}};
    CHECK(oracle::standard_count(3, 3, {{0, 1}, {1, 2}, {2, 0}}) == 6);
    for (int i = 0; i < 30; ++i) CHECK(count_colorings(coboundary_graph(3, tri, 3, rng)) == 6);
  }
  SUBCASE("4-cycle, k = 3") {
    const std::vector<std::pair<Vertex, Vertex>> c4{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
    CHECK(oracle::standard_count(4, 3, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}) == 18);
    for (int i = 0; i < 30; ++i) CHECK(count_colorings(coboundary_graph(4, c4, 3, rng)) == 18);
  }
  SUBCASE("single vertex") {
    CHECK(count_colorings(coboundary_graph(1, {}, 4, rng)) == 4);
  }
  SUBCASE("random skeletons up to n = 6") {
    for (int trial = 0; trial < 40; ++trial) {
      const int n = 1 + static_cast<int>(rng.below(6));
      const int k = 2 + static_cast<int>(rng.below(3));
      std::vector<std::pair<Vertex, Vertex>> skeleton;
      std::vector<std::pair<int, int>> plain;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (rng.below(2)) {
            skeleton.emplace_back(u, v);
            plain.emplace_back(u, v);
          }
      const auto g = coboundary_graph(n, skeleton, k, rng);
      CHECK(oracle::count(g) == oracle::standard_count(n, k, plain));
    }
  }
}

TEST_CASE("instance JSON round trip") {
  Rng rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto g = oracle::random_instance(rng, 1 + static_cast<int>(rng.below(6)), 2 + static_cast<int>(rng.below(4)), static_cast<int>(rng.below(10)));
    const auto text = dump_instance(g);
    const auto back = parse_instance(text);
    CHECK(back == g);
    CHECK(dump_instance(back) == text);
  }
  CHECK_THROWS_AS(parse_instance("{\"n\": 2}"), InvalidParameter);
  CHECK_THROWS_AS(parse_instance("{\"n\": 2, \"k\": 2, \"edges\": [{\"u\":0,\"v\":1,\"pi\":[0,0]}]}"), InvalidParameter);
  CHECK_THROWS_AS(parse_instance("not json"), InvalidParameter);
  CHECK(dump_instance(parse_instance(R"({"n":2,"k":3,"edges":[{"u":1,"v":0,"pi":[1,2,0]}]})")) ==
        R"({"edges":[{"pi":[1,2,0],"u":1,"v":0}],"k":3,"n":2})");
}

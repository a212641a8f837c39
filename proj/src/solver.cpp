#include "pkcol/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>

#include "pkcol/errors.hpp"

namespace pkcol {

const char* to_string(SolveStatus s) {
  return s == SolveStatus::colorable ? "colorable" : "uncolorable";
}

namespace {

using Mask = std::uint64_t;

Mask full_mask(int k) { return k == 64 ? ~Mask{0} : (Mask{1} << k) - 1; }

void check_solver_k(const DecoratedGraph& g) {
  if (g.k() > kMaxSolverColors)
    throw InvalidParameter("solver supports k <= " + std::to_string(kMaxSolverColors));
}

void check_coloring_shape(const DecoratedGraph& g, const Coloring& s) {
  if (s.size() != static_cast<std::size_t>(g.n()))
    throw InvalidParameter("coloring length " + std::to_string(s.size()) + " != n=" +
                           std::to_string(g.n()));
  for (Color c : s)
    if (c < 0 || c >= g.k()) throw InvalidParameter("coloring entry out of range");
}

void check_cap(const DecoratedGraph& g, const SolverOptions& options) {
  const double bits = g.n() * std::log2(static_cast<double>(g.k()));
  if (bits > options.state_cap_log2 + 1e-9)
    throw CapExceeded("k^n = 2^" + std::to_string(bits) + " exceeds the enumeration cap 2^" +
                      std::to_string(options.state_cap_log2));
}

// One direction of an edge: assigning color c at the owner forbids map[c] at `other`.
struct Arc {
  Vertex other;
  const Color* map;
};

// Forbidden-color lookups for one vertex, used by available_colors.
struct Blocker {
  Vertex source;  // whose color is looked up (== owner for loops)
  const Color* map;
};

class Search {
 public:
  explicit Search(const DecoratedGraph& g) : g_(g), k_(g.k()) {
    check_solver_k(g);
    const auto n = static_cast<std::size_t>(g.n());
    inverses_.reserve(g.m());
    for (const auto& e : g.edges()) inverses_.push_back(e.pi.inverse());

    arcs_.resize(n);
    blockers_.resize(n);
    initial_.assign(n, full_mask(k_));
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
      const auto& e = g.edges()[i];
      const Color* fwd = e.pi.image().data();
      const Color* inv = inverses_[i].image().data();
      const auto u = static_cast<std::size_t>(e.u);
      const auto v = static_cast<std::size_t>(e.v);
      if (e.is_loop()) {
        for (Color c = 0; c < k_; ++c)
          if (fwd[c] == c) initial_[u] &= ~(Mask{1} << c);
        blockers_[u].push_back({e.u, fwd});
        blockers_[u].push_back({e.u, inv});
      } else {
        arcs_[u].push_back({e.v, fwd});
        arcs_[v].push_back({e.u, inv});
        blockers_[v].push_back({e.u, fwd});
        blockers_[u].push_back({e.v, inv});
      }
    }
  }

  const std::vector<Blocker>& blockers(Vertex v) const {
    return blockers_[static_cast<std::size_t>(v)];
  }

  std::vector<std::vector<Vertex>> components() const {
    const auto n = static_cast<std::size_t>(g_.n());
    std::vector<int> comp(n, -1);
    std::vector<std::vector<Vertex>> out;
    for (std::size_t root = 0; root < n; ++root) {
      if (comp[root] >= 0) continue;
      const int id = static_cast<int>(out.size());
      out.emplace_back();
      std::vector<std::size_t> stack{root};
      comp[root] = id;
      while (!stack.empty()) {
        const auto x = stack.back();
        stack.pop_back();
        out.back().push_back(static_cast<Vertex>(x));
        for (const auto& a : arcs_[x]) {
          const auto y = static_cast<std::size_t>(a.other);
          if (comp[y] < 0) {
            comp[y] = id;
            stack.push_back(y);
          }
        }
      }
      std::sort(out.back().begin(), out.back().end());
    }
    return out;
  }

  // Enumerates proper colorings of `vertices` (a union of components).
  // on_leaf(colors) returns false to stop. With `count_last` the final
  // vertex is not branched on; on_count receives its domain size instead.
  struct Run {
    std::uint64_t nodes = 0;
    bool stopped = false;
  };

  Run run(const std::vector<Vertex>& vertices, std::optional<std::uint64_t> budget,
          const std::function<bool(const Coloring&)>& on_leaf,
          const std::function<void(int)>* on_count = nullptr) {
    vertices_ = vertices;
    domain_ = initial_;
    colors_.assign(static_cast<std::size_t>(g_.n()), -1);
    trail_.clear();
    budget_ = budget;
    on_leaf_ = &on_leaf;
    on_count_ = on_count;
    run_ = Run{};
    for (Vertex v : vertices_)
      if (domain_[static_cast<std::size_t>(v)] == 0) return run_;
    recurse(vertices_.size());
    return run_;
  }

  const Coloring& colors() const { return colors_; }

 private:
  Vertex pick() const {
    Vertex best = -1;
    int best_size = std::numeric_limits<int>::max();
    for (Vertex v : vertices_) {
      const auto i = static_cast<std::size_t>(v);
      if (colors_[i] >= 0) continue;
      const int size = std::popcount(domain_[i]);
      if (size < best_size) {
        best = v;
        best_size = size;
      }
    }
    return best;
  }

  // Returns false when the search must stop.
  bool recurse(std::size_t remaining) {
    if (remaining == 0) {
      if (!(*on_leaf_)(colors_)) {
        run_.stopped = true;
        return false;
      }
      return true;
    }
    const Vertex v = pick();
    const auto vi = static_cast<std::size_t>(v);
    if (remaining == 1 && on_count_) {
      ++run_.nodes;
      (*on_count_)(std::popcount(domain_[vi]));
      return true;
    }
    Mask options = domain_[vi];
    while (options) {
      const Color c = std::countr_zero(options);
      options &= options - 1;
      if (budget_ && run_.nodes >= *budget_)
        throw BudgetExhausted("node budget of " + std::to_string(*budget_) + " exhausted");
      ++run_.nodes;

      colors_[vi] = c;
      const auto mark = trail_.size();
      bool wiped = false;
      for (const auto& a : arcs_[vi]) {
        const auto w = static_cast<std::size_t>(a.other);
        if (colors_[w] >= 0) continue;
        const Mask bit = Mask{1} << a.map[c];
        if (domain_[w] & bit) {
          domain_[w] &= ~bit;
          trail_.push_back({w, bit});
          if (domain_[w] == 0) {
            wiped = true;
            break;
          }
        }
      }
      const bool keep_going = wiped || recurse(remaining - 1);
      while (trail_.size() > mark) {
        domain_[trail_.back().first] |= trail_.back().second;
        trail_.pop_back();
      }
      colors_[vi] = -1;
      if (!keep_going) return false;
    }
    return true;
  }

  const DecoratedGraph& g_;
  int k_;
  std::vector<Permutation> inverses_;
  std::vector<std::vector<Arc>> arcs_;
  std::vector<std::vector<Blocker>> blockers_;
  std::vector<Mask> initial_;

  std::vector<Vertex> vertices_;
  std::vector<Mask> domain_;
  Coloring colors_;
  std::vector<std::pair<std::size_t, Mask>> trail_;
  std::optional<std::uint64_t> budget_;
  const std::function<bool(const Coloring&)>* on_leaf_ = nullptr;
  const std::function<void(int)>* on_count_ = nullptr;
  Run run_;
};

int available_unchecked(const Search& search, const Coloring& s, Vertex v, int k) {
  Mask forbidden = 0;
  for (const auto& b : search.blockers(v))
    forbidden |= Mask{1} << b.map[s[static_cast<std::size_t>(b.source)]];
  return k - std::popcount(forbidden);
}

std::vector<Vertex> all_vertices(const DecoratedGraph& g) {
  std::vector<Vertex> vs(static_cast<std::size_t>(g.n()));
  std::iota(vs.begin(), vs.end(), 0);
  return vs;
}

// Exact reciprocal sums of prod_v c(sigma, v), one per component.
std::vector<ReciprocalSum> component_weight_sums(const DecoratedGraph& g,
                                                 const SolverOptions& options) {
  check_cap(g, options);
  Search search(g);
  std::vector<ReciprocalSum> sums;
  const double bits_per_vertex = std::log2(static_cast<double>(g.k()));
  for (const auto& comp : search.components()) {
    if (static_cast<double>(comp.size()) * bits_per_vertex > 63.0)
      throw CapExceeded("component too large for exact weight products");
    ReciprocalSum sum;
    std::function<bool(const Coloring&)> leaf = [&](const Coloring& s) {
      std::uint64_t product = 1;
      for (Vertex v : comp) product *= static_cast<std::uint64_t>(available_unchecked(search, s, v, g.k()));
      sum.add(product);
      return true;
    };
    search.run(comp, std::nullopt, leaf);
    sums.push_back(std::move(sum));
  }
  return sums;
}

}  // namespace

bool is_proper(const DecoratedGraph& g, const Coloring& s) {
  check_coloring_shape(g, s);
  for (const auto& e : g.edges())
    if (s[static_cast<std::size_t>(e.v)] == e.pi.at(s[static_cast<std::size_t>(e.u)])) return false;
  return true;
}

SolveResult decide(const DecoratedGraph& g, const SolverOptions& options) {
  Search search(g);
  SolveResult result;
  std::function<bool(const Coloring&)> leaf = [&](const Coloring& s) {
    result.witness = s;
    return false;
  };
  const auto run = search.run(all_vertices(g), options.node_budget, leaf);
  result.nodes_expanded = run.nodes;
  result.status = result.witness ? SolveStatus::colorable : SolveStatus::uncolorable;
  return result;
}

SolveResult solve_and_count(const DecoratedGraph& g, const SolverOptions& options) {
  check_cap(g, options);
  Search search(g);
  SolveResult result;
  BigInt total = 1;
  Coloring witness(static_cast<std::size_t>(g.n()), 0);
  std::uint64_t nodes = 0;
  for (const auto& comp : search.components()) {
    unsigned __int128 count = 0;
    bool have_witness = false;
    std::function<bool(const Coloring&)> leaf = [&](const Coloring& s) {
      ++count;
      if (!have_witness) {
        for (Vertex v : comp) witness[static_cast<std::size_t>(v)] = s[static_cast<std::size_t>(v)];
        have_witness = true;
      }
      return true;
    };
    const auto run = search.run(comp, std::nullopt, leaf);
    nodes += run.nodes;
    if (count == 0) {
      total = 0;
      break;
    }
    BigInt c = static_cast<std::uint64_t>(count >> 64);
    c <<= 64;
    c += static_cast<std::uint64_t>(count);
    total *= c;
  }
  result.nodes_expanded = nodes;
  result.count = total;
  if (total > 0) {
    result.status = SolveStatus::colorable;
    result.witness = witness;
  }
  return result;
}

BigInt count_colorings(const DecoratedGraph& g, const SolverOptions& options) {
  check_cap(g, options);
  Search search(g);
  BigInt total = 1;
  for (const auto& comp : search.components()) {
    unsigned __int128 count = 0;
    std::function<bool(const Coloring&)> leaf = [&](const Coloring&) {
      ++count;
      return true;
    };
    std::function<void(int)> last = [&](int options_left) {
      count += static_cast<unsigned>(options_left);
    };
    search.run(comp, std::nullopt, leaf, &last);
    if (count == 0) return 0;
    BigInt c = static_cast<std::uint64_t>(count >> 64);
    c <<= 64;
    c += static_cast<std::uint64_t>(count);
    total *= c;
  }
  return total;
}

int available_colors(const DecoratedGraph& g, const Coloring& s, Vertex v) {
  if (v < 0 || v >= g.n()) throw InvalidParameter("vertex out of range");
  if (!is_proper(g, s)) throw PreconditionViolation("available_colors needs a proper coloring");
  Search search(g);
  return available_unchecked(search, s, v, g.k());
}

Rational weight(const DecoratedGraph& g, const Coloring& s) {
  if (!is_proper(g, s)) return 0;
  Search search(g);
  BigInt product = 1;
  for (Vertex v = 0; v < g.n(); ++v) product *= available_unchecked(search, s, v, g.k());
  return Rational(BigInt(1), product);
}

Rational z_weight(const DecoratedGraph& g, const SolverOptions& options) {
  Rational z = 1;
  for (const auto& sum : component_weight_sums(g, options)) {
    if (sum.empty()) return 0;
    z *= sum.value();
  }
  return z;
}

double z_weight_log(const DecoratedGraph& g, const SolverOptions& options) {
  double log_z = 0.0;
  for (const auto& sum : component_weight_sums(g, options)) {
    if (sum.empty()) return -std::numeric_limits<double>::infinity();
    log_z += sum.log_value();
  }
  return log_z;
}

}  // namespace pkcol

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pkcol/exact.hpp"
#include "pkcol/graph.hpp"

namespace pkcol {

using Coloring = std::vector<Color>;

enum class SolveStatus { colorable, uncolorable };

const char* to_string(SolveStatus s);

struct SolveResult {
  SolveStatus status = SolveStatus::uncolorable;
  std::optional<Coloring> witness;
  std::optional<BigInt> count;
  std::uint64_t nodes_expanded = 0;
};

struct SolverOptions {
  /// decide() gives up with BudgetExhausted after this many search nodes.
  std::optional<std::uint64_t> node_budget;
  /// Counting and Z enumeration refuse instances with n * log2(k) above this.
  double state_cap_log2 = 24.0;
};

/// The largest k the bitmask search supports.
inline constexpr int kMaxSolverColors = 64;

/// sigma(v) != pi(sigma(u)) for every edge (u, v, pi); a loop at v needs
/// sigma(v) to avoid the fixed points of its permutation.
bool is_proper(const DecoratedGraph& g, const Coloring& s);

/// Exact backtracking: minimum-remaining-colors order (ties to the lowest
/// vertex), forward checking on bitmask domains. Sound and complete; throws
/// BudgetExhausted instead of guessing.
SolveResult decide(const DecoratedGraph& g, const SolverOptions& options = {});

/// Exact number of permuted k-colorings. Connected components are counted
/// separately and multiplied. Throws CapExceeded past the state cap.
BigInt count_colorings(const DecoratedGraph& g, const SolverOptions& options = {});

/// Status plus count in one SolveResult; witness is the first coloring found.
SolveResult solve_and_count(const DecoratedGraph& g, const SolverOptions& options = {});

/// k minus the number of distinct colors forbidden at v by its neighbors'
/// colors. A loop at v forbids both pi(s(v)) and pi^{-1}(s(v)).
/// Requires a proper s (PreconditionViolation otherwise).
int available_colors(const DecoratedGraph& g, const Coloring& s, Vertex v);

/// prod_v 1/c(s, v) for proper s, 0 otherwise.
Rational weight(const DecoratedGraph& g, const Coloring& s);

/// Z = sum of weight over all k^n colorings, exactly.
Rational z_weight(const DecoratedGraph& g, const SolverOptions& options = {});

/// ln Z via log-sum-exp in floating point; -infinity when uncolorable.
double z_weight_log(const DecoratedGraph& g, const SolverOptions& options = {});

}  // namespace pkcol

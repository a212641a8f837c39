#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pkcol/exact.hpp"
#include "pkcol/rng.hpp"

namespace pkcol {

/// Subset of the cube [k]^n stored as a membership indicator. A cell is the
/// mixed-radix index sum_v sigma(v) k^v, so axis 0 is least significant.
class CubeSubset {
 public:
  static constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 20;

  CubeSubset(int k, int n);  // empty subset
  CubeSubset(int k, int n, std::vector<bool> membership);

  static CubeSubset full(int k, int n);
  /// Bit i of `mask` selects cell i; needs k^n <= 64.
  static CubeSubset from_mask(int k, int n, std::uint64_t mask);

  int k() const { return k_; }
  int n() const { return n_; }
  std::uint64_t cells() const { return membership_.size(); }
  std::uint64_t size() const;
  bool empty() const { return size() == 0; }

  bool contains(std::uint64_t cell) const { return membership_[cell]; }
  void insert(std::uint64_t cell) { membership_.at(cell) = true; }
  void erase(std::uint64_t cell) { membership_.at(cell) = false; }

  std::uint64_t encode(const std::vector<int>& point) const;
  std::vector<int> decode(std::uint64_t cell) const;
  std::uint64_t stride(int axis) const { return strides_[static_cast<std::size_t>(axis)]; }

  const std::vector<bool>& membership() const { return membership_; }
  friend bool operator==(const CubeSubset& a, const CubeSubset& b) {
    return a.k_ == b.k_ && a.n_ == b.n_ && a.membership_ == b.membership_;
  }

 private:
  int k_;
  int n_;
  std::vector<std::uint64_t> strides_;
  std::vector<bool> membership_;
};

/// Members of S that agree with `cell` off `axis`, the cell itself included.
/// Throws PreconditionViolation when the cell is not in S.
int neighbor_count(const CubeSubset& s, std::uint64_t cell, int axis);

/// Z(S) = sum over members of prod_v 1/neighbor_count, exactly.
Rational subset_z(const CubeSubset& s);

/// Union of the full axis lines through every member.
CubeSubset cylinder_thicken(const CubeSubset& s, int axis);

/// Z(thicken(S, axis)) <= Z(S) in exact arithmetic; S must be nonempty.
bool verify_monotone(const CubeSubset& s, int axis);

/// Z along T_0 = S, T_v = thicken(T_{v-1}, v-1) for v = 1..n.
std::vector<Rational> thickening_chain(const CubeSubset& s);

struct IsoReport {
  int k = 0;
  int n = 0;
  std::uint64_t subsets_checked = 0;
  Rational min_z = 0;
  std::optional<CubeSubset> argmin;
  bool all_ge_one = true;
  bool all_monotone = true;
};

/// Every nonempty subset of [k]^n (needs k^n <= 16); CapExceeded otherwise.
/// argmin is the first subset, by mask order, attaining the minimum.
IsoReport exhaustive_check(int k, int n);

/// `trials` random subsets: independent inclusion at densities 0.1, 0.3,
/// 0.5, 0.9 in rotation, plus every structured family (axis-aligned
/// subcubes and diagonals). Each nonempty subset is checked for Z >= 1 and
/// for monotone thickening along every axis.
IsoReport random_check(int k, int n, std::int64_t trials, std::uint64_t seed);

/// Boolean-cube form for k = 2: sum over members of 2^{-|boundary|}, where
/// the boundary counts members differing in exactly one coordinate.
Rational boolean_cube_sum(const CubeSubset& s);

}  // namespace pkcol

#include "pkcol/iso_cube.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "pkcol/errors.hpp"

namespace pkcol {

namespace {

std::vector<std::uint64_t> make_strides(int k, int n) {
  if (k < 1 || n < 1) throw InvalidParameter("cube needs k >= 1 and n >= 1");
  std::vector<std::uint64_t> strides(static_cast<std::size_t>(n) + 1);
  strides[0] = 1;
  for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) {
    strides[v + 1] = strides[v] * static_cast<std::uint64_t>(k);
    if (strides[v + 1] > CubeSubset::kMaxCells)
      throw CapExceeded("k^n exceeds the cube cell cap of 2^20");
  }
  return strides;
}

void check_axis(const CubeSubset& s, int axis) {
  if (axis < 0 || axis >= s.n()) throw InvalidParameter("axis out of range");
}

// Digit of `cell` along `axis`.
int digit(const CubeSubset& s, std::uint64_t cell, int axis) {
  return static_cast<int>((cell / s.stride(axis)) % static_cast<std::uint64_t>(s.k()));
}

int line_count(const CubeSubset& s, std::uint64_t cell, int axis) {
  const auto stride = s.stride(axis);
  const std::uint64_t base = cell - static_cast<std::uint64_t>(digit(s, cell, axis)) * stride;
  int count = 0;
  for (int c = 0; c < s.k(); ++c)
    if (s.contains(base + static_cast<std::uint64_t>(c) * stride)) ++count;
  return count;
}

}  // namespace

CubeSubset::CubeSubset(int k, int n)
    : k_(k), n_(n), strides_(make_strides(k, n)), membership_(strides_.back(), false) {}

CubeSubset::CubeSubset(int k, int n, std::vector<bool> membership)
    : k_(k), n_(n), strides_(make_strides(k, n)), membership_(std::move(membership)) {
  if (membership_.size() != strides_.back())
    throw InvalidParameter("membership length does not match k^n");
}

CubeSubset CubeSubset::full(int k, int n) {
  CubeSubset s(k, n);
  s.membership_.assign(s.membership_.size(), true);
  return s;
}

CubeSubset CubeSubset::from_mask(int k, int n, std::uint64_t mask) {
  CubeSubset s(k, n);
  if (s.cells() > 64) throw InvalidParameter("from_mask needs k^n <= 64");
  for (std::uint64_t i = 0; i < s.cells(); ++i) s.membership_[i] = (mask >> i) & 1U;
  return s;
}

std::uint64_t CubeSubset::size() const {
  std::uint64_t count = 0;
  for (bool b : membership_) count += b ? 1 : 0;
  return count;
}

std::uint64_t CubeSubset::encode(const std::vector<int>& point) const {
  if (point.size() != static_cast<std::size_t>(n_)) throw InvalidParameter("point has wrong dimension");
  std::uint64_t cell = 0;
  for (std::size_t v = 0; v < point.size(); ++v) {
    if (point[v] < 0 || point[v] >= k_) throw InvalidParameter("coordinate out of range");
    cell += static_cast<std::uint64_t>(point[v]) * strides_[v];
  }
  return cell;
}

std::vector<int> CubeSubset::decode(std::uint64_t cell) const {
  if (cell >= cells()) throw InvalidParameter("cell index out of range");
  std::vector<int> point(static_cast<std::size_t>(n_));
  for (auto& x : point) {
    x = static_cast<int>(cell % static_cast<std::uint64_t>(k_));
    cell /= static_cast<std::uint64_t>(k_);
  }
  return point;
}

int neighbor_count(const CubeSubset& s, std::uint64_t cell, int axis) {
  check_axis(s, axis);
  if (cell >= s.cells() || !s.contains(cell))
    throw PreconditionViolation("neighbor_count needs a member cell");
  return line_count(s, cell, axis);
}

Rational subset_z(const CubeSubset& s) {
  ReciprocalSum sum;
  for (std::uint64_t cell = 0; cell < s.cells(); ++cell) {
    if (!s.contains(cell)) continue;
    std::uint64_t product = 1;  // <= k^n <= 2^20
    for (int axis = 0; axis < s.n(); ++axis) product *= static_cast<std::uint64_t>(line_count(s, cell, axis));
    sum.add(product);
  }
  return sum.value();
}

CubeSubset cylinder_thicken(const CubeSubset& s, int axis) {
  check_axis(s, axis);
  CubeSubset out(s.k(), s.n());
  const auto stride = s.stride(axis);
  for (std::uint64_t cell = 0; cell < s.cells(); ++cell) {
    if (!s.contains(cell)) continue;
    const std::uint64_t base = cell - static_cast<std::uint64_t>(digit(s, cell, axis)) * stride;
    for (int c = 0; c < s.k(); ++c) out.insert(base + static_cast<std::uint64_t>(c) * stride);
  }
  return out;
}

bool verify_monotone(const CubeSubset& s, int axis) {
  if (s.empty()) throw InvalidParameter("verify_monotone needs a nonempty subset");
  return subset_z(cylinder_thicken(s, axis)) <= subset_z(s);
}

std::vector<Rational> thickening_chain(const CubeSubset& s) {
  std::vector<Rational> chain{subset_z(s)};
  CubeSubset current = s;
  for (int axis = 0; axis < s.n(); ++axis) {
    current = cylinder_thicken(current, axis);
    chain.push_back(subset_z(current));
  }
  return chain;
}

namespace {

void record(IsoReport& report, const CubeSubset& s, bool check_thickening) {
  const Rational z = subset_z(s);
  if (report.subsets_checked == 0 || z < report.min_z) {
    report.min_z = z;
    report.argmin = s;
  }
  ++report.subsets_checked;
  if (z < 1) report.all_ge_one = false;
  if (check_thickening) {
    for (int axis = 0; axis < s.n(); ++axis)
      if (!(subset_z(cylinder_thicken(s, axis)) <= z)) report.all_monotone = false;
  }
}

}  // namespace

IsoReport exhaustive_check(int k, int n) {
  const double cells = std::pow(static_cast<double>(k), n);
  if (k < 1 || n < 1) throw InvalidParameter("cube needs k >= 1 and n >= 1");
  if (cells > 16.0) throw CapExceeded("exhaustive_check needs k^n <= 16; use random_check");
  IsoReport report;
  report.k = k;
  report.n = n;
  const auto count = static_cast<std::uint64_t>(cells);
  const std::uint64_t last = (std::uint64_t{1} << count) - 1;
  for (std::uint64_t mask = 1; mask <= last; ++mask)
    record(report, CubeSubset::from_mask(k, n, mask), true);
  return report;
}

IsoReport random_check(int k, int n, std::int64_t trials, std::uint64_t seed) {
  if (trials < 0) throw InvalidParameter("trials must be nonnegative");
  IsoReport report;
  report.k = k;
  report.n = n;
  const CubeSubset shape(k, n);
  const auto cells = shape.cells();

  // Structured families: diagonals {(c, c, ..., c)} restricted to a color
  // prefix, and axis-aligned subcubes [a]^n.
  for (int width = 1; width <= k; ++width) {
    CubeSubset diagonal(k, n), subcube(k, n);
    for (int c = 0; c < width; ++c) diagonal.insert(diagonal.encode(std::vector<int>(static_cast<std::size_t>(n), c)));
    for (std::uint64_t cell = 0; cell < cells; ++cell) {
      bool inside = true;
      for (int x : subcube.decode(cell)) inside = inside && x < width;
      if (inside) subcube.insert(cell);
    }
    record(report, diagonal, true);
    record(report, subcube, true);
  }

  static constexpr double kDensities[] = {0.1, 0.3, 0.5, 0.9};
  Rng rng(seed);
  for (std::int64_t t = 0; t < trials; ++t) {
    const double density = kDensities[static_cast<std::size_t>(t) % 4];
    CubeSubset s(k, n);
    for (std::uint64_t cell = 0; cell < cells; ++cell)
      if (rng.uniform() < density) s.insert(cell);
    if (s.empty()) s.insert(rng.below(cells));
    record(report, s, true);
  }
  return report;
}

Rational boolean_cube_sum(const CubeSubset& s) {
  if (s.k() != 2) throw InvalidParameter("boolean_cube_sum needs k = 2");
  Rational total = 0;
  for (std::uint64_t cell = 0; cell < s.cells(); ++cell) {
    if (!s.contains(cell)) continue;
    unsigned boundary = 0;
    for (int axis = 0; axis < s.n(); ++axis)
      if (s.contains(cell ^ s.stride(axis))) ++boundary;
    total += Rational(BigInt(1), BigInt(1) << boundary);
  }
  return total;
}

}  // namespace pkcol

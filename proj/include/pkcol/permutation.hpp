#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "pkcol/rng.hpp"

namespace pkcol {

using Color = int;

/// A bijection on the colors {0, ..., k-1}; image()[c] is the image of c.
///
/// Every constructor path checks bijectivity, so a Permutation value is
/// always valid.
class Permutation {
 public:
  explicit Permutation(std::vector<Color> image);

  static Permutation identity(int k);

  int size() const { return static_cast<int>(image_.size()); }
  const std::vector<Color>& image() const { return image_; }

  /// Image of c; throws InvalidParameter when c is not a color.
  Color operator()(Color c) const;

  /// Unchecked image lookup for inner loops.
  Color at(Color c) const { return image_[static_cast<std::size_t>(c)]; }

  Permutation inverse() const;
  bool is_identity() const;
  int fixed_points() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  struct Trusted {};
  Permutation(std::vector<Color> image, Trusted) : image_(std::move(image)) {}

  std::vector<Color> image_;

  friend Permutation compose_perm(const Permutation& p, const Permutation& q);
  friend Permutation sample_perm(int k, Rng& rng);
};

/// Uniform over all k! permutations (Fisher-Yates on the identity image,
/// drawing positions from the highest index down).
Permutation sample_perm(int k, Rng& rng);

Color apply_perm(const Permutation& p, Color c);
Permutation invert_perm(const Permutation& p);

/// c -> p(q(c)).
Permutation compose_perm(const Permutation& p, const Permutation& q);

std::ostream& operator<<(std::ostream& os, const Permutation& p);

}  // namespace pkcol

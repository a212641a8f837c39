#include "pkcol/permutation.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "pkcol/errors.hpp"

namespace pkcol {

Permutation::Permutation(std::vector<Color> image) : image_(std::move(image)) {
  const auto k = image_.size();
  if (k == 0) throw InvalidParameter("permutation must act on at least one color");
  std::vector<bool> seen(k, false);
  for (Color c : image_) {
    if (c < 0 || static_cast<std::size_t>(c) >= k || seen[static_cast<std::size_t>(c)])
      throw InvalidParameter("permutation image is not a bijection on 0..k-1");
    seen[static_cast<std::size_t>(c)] = true;
  }
}

Permutation Permutation::identity(int k) {
  if (k < 1) throw InvalidParameter("identity needs k >= 1");
  std::vector<Color> image(static_cast<std::size_t>(k));
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image), Trusted{});
}

Color Permutation::operator()(Color c) const {
  if (c < 0 || c >= size())
    throw InvalidParameter("color " + std::to_string(c) + " out of range for k=" +
                           std::to_string(size()));
  return at(c);
}

Permutation Permutation::inverse() const {
  std::vector<Color> inv(image_.size());
  for (std::size_t c = 0; c < image_.size(); ++c)
    inv[static_cast<std::size_t>(image_[c])] = static_cast<Color>(c);
  return Permutation(std::move(inv), Trusted{});
}

bool Permutation::is_identity() const {
  for (std::size_t c = 0; c < image_.size(); ++c)
    if (image_[c] != static_cast<Color>(c)) return false;
  return true;
}

int Permutation::fixed_points() const {
  int count = 0;
  for (std::size_t c = 0; c < image_.size(); ++c)
    if (image_[c] == static_cast<Color>(c)) ++count;
  return count;
}

Permutation sample_perm(int k, Rng& rng) {
  if (k < 1) throw InvalidParameter("sample_perm needs k >= 1");
  std::vector<Color> image(static_cast<std::size_t>(k));
  std::iota(image.begin(), image.end(), 0);
  for (std::size_t i = image.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i + 1));
    std::swap(image[i], image[j]);
  }
  return Permutation(std::move(image), Permutation::Trusted{});
}

Color apply_perm(const Permutation& p, Color c) { return p(c); }

Permutation invert_perm(const Permutation& p) { return p.inverse(); }

Permutation compose_perm(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) throw InvalidParameter("compose_perm: mismatched k");
  std::vector<Color> image(q.image_.size());
  for (std::size_t c = 0; c < image.size(); ++c) image[c] = p.at(q.at(static_cast<Color>(c)));
  return Permutation(std::move(image), Permutation::Trusted{});
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) {
  os << '[';
  for (int c = 0; c < p.size(); ++c) os << (c ? "," : "") << p.at(c);
  return os << ']';
}

}  // namespace pkcol

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace branchlab {

// Permutation of 0..n-1. Products compose right to left: (f * g)(x) = f(g(x)),
// matching the tree action.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<std::uint32_t> images);  // throws unless a bijection
  static Perm identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator[](std::size_t x) const { return images_[x]; }
  std::span<const std::uint32_t> images() const { return images_; }

  bool is_identity() const;
  // Smallest moved point, or degree() for the identity.
  std::size_t first_moved() const;
  Perm inverse() const;
  std::uint64_t order() const;

  friend Perm operator*(const Perm& f, const Perm& g);
  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  struct Unchecked {};
  Perm(std::vector<std::uint32_t> images, Unchecked) : images_(std::move(images)) {}
  std::vector<std::uint32_t> images_;
};

Perm pow(const Perm& g, std::uint64_t k);
Perm commutator(const Perm& g, const Perm& h);  // g^-1 h^-1 g h

struct PermHash {
  std::size_t operator()(const Perm& g) const noexcept;
};

}  // namespace branchlab

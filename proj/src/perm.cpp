#include "branchlab/perm.hpp"

#include <numeric>

#include "branchlab/error.hpp"

namespace branchlab {

Perm::Perm(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || hit[x]) {
      throw InvalidInput("permutation images are not a bijection");
    }
    hit[x] = true;
  }
}

Perm Perm::identity(std::size_t degree) {
  std::vector<std::uint32_t> img(degree);
  std::iota(img.begin(), img.end(), 0U);
  return Perm(std::move(img), Unchecked{});
}

bool Perm::is_identity() const { return first_moved() == images_.size(); }

std::size_t Perm::first_moved() const {
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (images_[x] != x) {
      return x;
    }
  }
  return images_.size();
}

Perm Perm::inverse() const {
  std::vector<std::uint32_t> img(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) {
    img[images_[x]] = static_cast<std::uint32_t>(x);
  }
  return Perm(std::move(img), Unchecked{});
}

std::uint64_t Perm::order() const {
  std::vector<bool> done(images_.size(), false);
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    std::uint64_t len = 0;
    for (std::size_t j = i; !done[j]; j = images_[j]) {
      done[j] = true;
      ++len;
    }
    if (len > 0) {
      order = std::lcm(order, len);
    }
  }
  return order;
}

Perm operator*(const Perm& f, const Perm& g) {
  if (f.degree() != g.degree()) {
    throw InvalidInput("permutation degree mismatch");
  }
  std::vector<std::uint32_t> img(g.degree());
  for (std::size_t x = 0; x < img.size(); ++x) {
    img[x] = f.images_[g.images_[x]];
  }
  return Perm(std::move(img), Perm::Unchecked{});
}

Perm pow(const Perm& g, std::uint64_t k) {
  Perm result = Perm::identity(g.degree());
  Perm base = g;
  while (k > 0) {
    if (k & 1) {
      result = result * base;
    }
    base = base * base;
    k >>= 1;
  }
  return result;
}

Perm commutator(const Perm& g, const Perm& h) { return g.inverse() * h.inverse() * g * h; }

std::size_t PermHash::operator()(const Perm& g) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto x : g.images()) {
    h ^= x;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace branchlab

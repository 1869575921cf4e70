#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "branchlab/group.hpp"
#include "branchlab/word.hpp"

namespace branchlab {

// Permutation of the first level: images[x] is the image of letter x.
struct RootPermutation {
  std::vector<std::uint8_t> images;

  static RootPermutation rotation(unsigned shift, unsigned p);
  bool is_identity() const;
  friend bool operator==(const RootPermutation&, const RootPermutation&) = default;
};

// Root permutations of all sections at vertices of length < depth, stored in
// level order and lexicographically within a level.
struct Portrait {
  unsigned degree = 0;
  unsigned depth = 0;
  std::vector<RootPermutation> nodes;

  const RootPermutation& at(const Vertex& v) const;
  bool is_trivial() const;
  friend bool operator==(const Portrait&, const Portrait&) = default;
};

// Reachable sections of a word. transitions[s][x] indexes the section of
// states[s] at letter x; states[0] is the initial word.
struct SectionClosure {
  std::vector<Word> states;
  std::vector<std::vector<std::uint32_t>> transitions;
  std::vector<RootPermutation> root_perms;
  bool complete = true;
};

struct OrderResult {
  std::optional<std::uint64_t> order;  // nullopt: no k <= bound with g^k = 1

  bool finite() const { return order.has_value(); }
  friend bool operator==(const OrderResult&, const OrderResult&) = default;
};

struct FiniteStateResult {
  bool finite = false;
  std::size_t states = 0;
};

Word mul(const Word& g, const Word& h, const GgsGroup& G);
Word inv(const Word& g, const GgsGroup& G);
Word power(const Word& g, std::uint64_t k, const GgsGroup& G);
Word commutator(const Word& g, const Word& h, const GgsGroup& G);  // g^-1 h^-1 g h

RootPermutation root_perm(const Word& g, const GgsGroup& G);
Word section(const Word& g, unsigned x, const GgsGroup& G);
Word section(const Word& g, const Vertex& v, const GgsGroup& G);
Vertex act(const Word& g, const Vertex& v, const GgsGroup& G);

SectionClosure section_closure(const Word& g, std::size_t state_cap, const GgsGroup& G);

// Decides g = 1 over its whole (finite) section closure. Throws
// InvariantViolation when the state budget is exhausted.
bool is_identity(const Word& g, const GgsGroup& G);
bool equal(const Word& g, const Word& h, const GgsGroup& G);

Portrait portrait(const Word& g, unsigned depth, const GgsGroup& G);

// Smallest 1 <= k <= bound with g^k = 1. The order of g on each level of the
// tree divides any such k, so only multiples of the level order are tested.
OrderResult order_up_to(const Word& g, std::uint64_t bound, const GgsGroup& G);

// Number of vertices of length n carrying a nontrivial section.
std::size_t activity_profile(const Word& g, unsigned n, const GgsGroup& G);
FiniteStateResult is_finite_state(const Word& g, std::size_t state_cap, const GgsGroup& G);

// Image of every vertex of length n, indexed lexicographically.
std::vector<std::uint32_t> level_action(const Word& g, unsigned n, const GgsGroup& G);

}  // namespace branchlab

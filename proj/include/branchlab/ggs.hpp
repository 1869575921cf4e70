#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "branchlab/group.hpp"
#include "branchlab/word.hpp"

namespace branchlab {

// Outcome of checking a^p = 1 and b^p = 1 on unreduced words.
struct RelationReport {
  bool a_holds = false;
  bool b_holds = false;
  std::size_t a_states = 0;
  std::size_t b_states = 0;

  bool ok() const { return a_holds && b_holds; }
};

// Checks the generator relations without using exponent reduction mod p: the
// syllable a (or b) is repeated p times and the section closure is explored
// on raw syllable sequences, so the check does not presuppose what it verifies.
RelationReport verify_generator_relations(const GgsGroup& G);

// Validated group context. Throws InvalidInput for a non-prime p, a vector of
// the wrong length or the zero vector, InvariantViolation if the relations fail.
GgsGroup define_ggs(unsigned p, std::vector<unsigned> e, EngineOptions options = {});

struct FamilyVector {
  GgsVector vector;
  bool theorem_compliant = false;  // lambda not in {1, 2}
};

// (1, ..., 1, lambda) of length p-1. With require_compliant set, lambda = 1 or 2
// (mod p) is rejected.
FamilyVector family_vector(unsigned p, std::int64_t lambda, bool require_compliant = false);

// Exponent sums mod p: the map onto (Z/p)^2.
struct AbelianizationVector {
  unsigned a_exp = 0;
  unsigned b_exp = 0;

  bool is_zero() const { return a_exp == 0 && b_exp == 0; }
  friend bool operator==(const AbelianizationVector&, const AbelianizationVector&) = default;
};

AbelianizationVector theta(const Word& g, const GgsGroup& G);

// theta(g) == 0. The kernel contains [G, G]; equality is the abelianization
// cross-check done on the finite quotients.
bool in_derived_kernel(const Word& g, const GgsGroup& G);

}  // namespace branchlab

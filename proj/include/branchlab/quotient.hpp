#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "branchlab/group.hpp"
#include "branchlab/perm.hpp"
#include "branchlab/perm_group.hpp"
#include "branchlab/word.hpp"

namespace branchlab {

inline constexpr std::size_t kDefaultDegreeBudget = 3125;

// Action of a word on the p^n vertices of level n; leaves are ordered
// lexicographically by vertex word.
struct LeafPermutation {
  unsigned level = 0;
  Perm perm;
};

LeafPermutation leaf_permutation(const Word& g, unsigned n, const GgsGroup& G);

// G_n = G / stab_G(n) as the permutation group <a, b> on level n.
PermutationGroup quotient_group(const GgsGroup& G, unsigned n,
                                std::size_t degree_budget = kDefaultDegreeBudget);

BigInt group_order(const PermutationGroup& P);
bool membership(const PermutationGroup& P, const Perm& g);

bool is_transitive_on_level(const GgsGroup& G, unsigned n,
                            std::size_t degree_budget = kDefaultDegreeBudget);

struct PPowerCertificate {
  bool ok = false;
  unsigned exponent = 0;     // valid when ok
  BigInt offending_factor;   // smallest prime factor other than p, when !ok
};

PPowerCertificate certify_p_power(const BigInt& order, unsigned p);

// Normal closure of the generator commutators.
PermutationGroup derived_subgroup(const PermutationGroup& P);

struct AbelianQuotient {
  BigInt order;
  bool elementary = false;  // every generator has order dividing p modulo [P, P]
};

AbelianQuotient abelian_quotient_order(const PermutationGroup& P, unsigned p);

// Elements of G_n fixing every leaf outside the subtree below v.
PermutationGroup rigid_stabilizer_in_quotient(const GgsGroup& G, unsigned n, const Vertex& v,
                                              std::size_t degree_budget = kDefaultDegreeBudget);

// Finite-depth evidence for stab_G(v)|_v = G: the sections at v of Schreier
// generators of stab_G(v) generate the same group on level `depth` as a, b.
bool fractality_evidence(const GgsGroup& G, const Vertex& v, unsigned depth,
                         std::size_t degree_budget = kDefaultDegreeBudget);

struct QuotientReport {
  GgsVector vector;
  unsigned level = 0;
  BigInt order;
  std::optional<unsigned> p_power_exponent;
  BigInt offending_factor;  // 0 when certified
  bool transitive = false;
  BigInt abelian_quotient_order;
  bool elementary_abelian = false;
};

QuotientReport quotient_report(const GgsGroup& G, unsigned n,
                               std::size_t degree_budget = kDefaultDegreeBudget);

}  // namespace branchlab

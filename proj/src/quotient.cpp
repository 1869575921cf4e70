#include "branchlab/quotient.hpp"

#include <unordered_map>

#include "branchlab/element.hpp"
#include "branchlab/error.hpp"

namespace branchlab {

namespace {

std::size_t level_degree(unsigned p, unsigned n, std::size_t budget) {
  std::size_t d = 1;
  for (unsigned l = 0; l < n; ++l) {
    d *= p;
    if (d > budget) {
      throw BudgetExceeded("level " + std::to_string(n) + " has more than " +
                           std::to_string(budget) + " vertices");
    }
  }
  return d;
}

}  // namespace

LeafPermutation leaf_permutation(const Word& g, unsigned n, const GgsGroup& G) {
  if (n < 1) {
    throw InvalidInput("leaf_permutation: level must be at least 1");
  }
  return {n, Perm(level_action(g, n, G))};
}

PermutationGroup quotient_group(const GgsGroup& G, unsigned n, std::size_t degree_budget) {
  if (n < 1) {
    throw InvalidInput("quotient_group: level must be at least 1");
  }
  auto const degree = level_degree(G.degree(), n, degree_budget);
  return PermutationGroup(degree, {leaf_permutation(G.a(), n, G).perm, leaf_permutation(G.b(), n, G).perm});
}

BigInt group_order(const PermutationGroup& P) { return P.order(); }

bool membership(const PermutationGroup& P, const Perm& g) { return P.contains(g); }

bool is_transitive_on_level(const GgsGroup& G, unsigned n, std::size_t degree_budget) {
  auto const degree = level_degree(G.degree(), n, degree_budget);
  // Orbit of leaf 0 under a and b only; no chain needed.
  auto const a = level_action(G.a(), n, G);
  auto const b = level_action(G.b(), n, G);
  std::vector<bool> seen(degree, false);
  std::vector<std::uint32_t> todo{0};
  seen[0] = true;
  for (std::size_t i = 0; i < todo.size(); ++i) {
    for (auto const* img : {&a, &b}) {
      auto const y = (*img)[todo[i]];
      if (!seen[y]) {
        seen[y] = true;
        todo.push_back(y);
      }
    }
  }
  return todo.size() == degree;
}

PPowerCertificate certify_p_power(const BigInt& order, unsigned p) {
  if (order < 1) {
    throw InvalidInput("certify_p_power: order must be positive");
  }
  PPowerCertificate c;
  BigInt rest = order;
  unsigned k = 0;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest == 1) {
    c.ok = true;
    c.exponent = k;
    return c;
  }
  for (unsigned d = 2; d < 1000000; ++d) {
    if (d != p && rest % d == 0) {
      c.offending_factor = d;
      return c;
    }
    if (BigInt(d) * d > rest) {
      break;
    }
  }
  c.offending_factor = rest;
  return c;
}

PermutationGroup derived_subgroup(const PermutationGroup& P) {
  auto const& gens = P.generators();
  PermutationGroup D(P.degree());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      D.add_generator(commutator(gens[i], gens[j]));
    }
  }
  // Close under conjugation by the generators of P; new generators are
  // appended to the worklist and processed in order.
  for (std::size_t k = 0; k < D.generators().size(); ++k) {
    Perm const d = D.generators()[k];
    for (auto const& g : gens) {
      D.add_generator(g.inverse() * d * g);
    }
  }
  return D;
}

AbelianQuotient abelian_quotient_order(const PermutationGroup& P, unsigned p) {
  auto const D = derived_subgroup(P);
  AbelianQuotient q;
  q.order = P.order() / D.order();
  q.elementary = true;
  for (auto const& g : P.generators()) {
    if (!D.contains(pow(g, p))) {
      q.elementary = false;
    }
  }
  return q;
}

PermutationGroup rigid_stabilizer_in_quotient(const GgsGroup& G, unsigned n, const Vertex& v,
                                              std::size_t degree_budget) {
  unsigned const p = G.degree();
  if (v.length() >= n) {
    throw InvalidInput("rigid_stabilizer_in_quotient: vertex must lie above level n");
  }
  for (auto x : v.letters) {
    if (x >= p) {
      throw InvalidInput("rigid_stabilizer_in_quotient: vertex letter out of range");
    }
  }
  auto const degree = level_degree(p, n, degree_budget);
  std::size_t const block = degree / level_degree(p, static_cast<unsigned>(v.length()), degree_budget);
  std::size_t const lo = vertex_index(v, p) * block;
  std::vector<std::uint32_t> complement;
  for (std::size_t leaf = 0; leaf < degree; ++leaf) {
    if (leaf < lo || leaf >= lo + block) {
      complement.push_back(static_cast<std::uint32_t>(leaf));
    }
  }
  PermutationGroup const chain(
      degree, {leaf_permutation(G.a(), n, G).perm, leaf_permutation(G.b(), n, G).perm}, complement);
  return chain.prefix_stabilizer(complement.size());
}

bool fractality_evidence(const GgsGroup& G, const Vertex& v, unsigned depth,
                         std::size_t degree_budget) {
  unsigned const p = G.degree();
  auto const target = quotient_group(G, depth, degree_budget);
  if (v.length() == 0) {
    return true;
  }
  level_degree(p, static_cast<unsigned>(v.length()), degree_budget);  // orbit of v fits the budget

  // Word transversal for the orbit of v: rep[w](v) = w.
  std::unordered_map<std::size_t, Word> rep;
  std::vector<Vertex> orbit{v};
  rep.emplace(vertex_index(v, p), Word{});
  std::vector<Word> const gens{G.a(), G.b()};
  std::vector<Word> stabilizer;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    Word const& u = rep.at(vertex_index(orbit[i], p));
    for (auto const& s : gens) {
      auto const w = act(s, orbit[i], G);
      Word const su = mul(s, u, G);
      auto const key = vertex_index(w, p);
      auto it = rep.find(key);
      if (it == rep.end()) {
        rep.emplace(key, su);
        orbit.push_back(w);
      } else {
        stabilizer.push_back(mul(inv(it->second, G), su, G));
      }
    }
  }
  PermutationGroup H(target.degree());
  for (auto const& h : stabilizer) {
    if (act(h, v, G) != v) {
      throw InvariantViolation("fractality_evidence: Schreier generator moves v");
    }
    auto const perm = leaf_permutation(section(h, v, G), depth, G).perm;
    if (!target.contains(perm)) {
      return false;
    }
    H.add_generator(perm);
  }
  return H.order() == target.order();
}

QuotientReport quotient_report(const GgsGroup& G, unsigned n, std::size_t degree_budget) {
  auto const P = quotient_group(G, n, degree_budget);
  QuotientReport r;
  r.vector = G.vector();
  r.level = n;
  r.order = P.order();
  auto const cert = certify_p_power(r.order, G.degree());
  if (cert.ok) {
    r.p_power_exponent = cert.exponent;
  } else {
    r.offending_factor = cert.offending_factor;
  }
  r.transitive = is_transitive_on_level(G, n, degree_budget);
  auto const ab = abelian_quotient_order(P, G.degree());
  r.abelian_quotient_order = ab.order;
  r.elementary_abelian = ab.elementary;
  return r;
}

}  // namespace branchlab

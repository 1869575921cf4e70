#include "branchlab/ggs.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "branchlab/error.hpp"

namespace branchlab {

namespace {

// Unmerged syllable sequence; b^k sections are a^{k e} with k e left unreduced.
using RawWord = std::vector<std::pair<Generator, std::int64_t>>;

struct RawClosure {
  bool trivial = true;
  std::size_t states = 0;
};

RawClosure raw_closure(RawWord start, const GgsGroup& G) {
  unsigned const p = G.degree();
  auto const& e = G.vector().e;
  std::set<RawWord> seen{start};
  std::queue<RawWord> todo;
  todo.push(std::move(start));
  RawClosure out;
  while (!todo.empty()) {
    RawWord const w = std::move(todo.front());
    todo.pop();
    std::int64_t shift = 0;
    for (auto const& [gen, k] : w) {
      if (gen == Generator::a) {
        shift += k;
      }
    }
    if (shift % static_cast<std::int64_t>(p) != 0) {
      out.trivial = false;
    }
    for (unsigned x = 0; x < p; ++x) {
      RawWord sec;
      std::int64_t y = x;
      for (std::size_t i = w.size(); i-- > 0;) {
        auto const [gen, k] = w[i];
        if (gen == Generator::a) {
          y = (y + k) % static_cast<std::int64_t>(p);
        } else if (y + 1 == static_cast<std::int64_t>(p)) {
          sec.emplace_back(Generator::b, k);
        } else if (e[static_cast<std::size_t>(y)] != 0) {
          sec.emplace_back(Generator::a, k * static_cast<std::int64_t>(e[static_cast<std::size_t>(y)]));
        }
      }
      std::reverse(sec.begin(), sec.end());
      if (!sec.empty() && seen.insert(sec).second) {
        if (seen.size() > G.options().state_budget) {
          throw InvariantViolation("relation check exceeded the state budget");
        }
        todo.push(std::move(sec));
      }
    }
  }
  out.states = seen.size();
  return out;
}

}  // namespace

RelationReport verify_generator_relations(const GgsGroup& G) {
  unsigned const p = G.degree();
  RelationReport r;
  auto const ra = raw_closure(RawWord(p, {Generator::a, 1}), G);
  auto const rb = raw_closure(RawWord(p, {Generator::b, 1}), G);
  r.a_holds = ra.trivial;
  r.a_states = ra.states;
  r.b_holds = rb.trivial;
  r.b_states = rb.states;
  return r;
}

GgsGroup define_ggs(unsigned p, std::vector<unsigned> e, EngineOptions options) {
  GgsGroup G(GgsVector{p, std::move(e)}, options);
  auto const rel = verify_generator_relations(G);
  if (!rel.ok()) {
    throw InvariantViolation("generator relations failed for " + to_string(G.vector()));
  }
  return G;
}

FamilyVector family_vector(unsigned p, std::int64_t lambda, bool require_compliant) {
  if (!is_prime(p) || p == 2) {
    throw InvalidInput("family vector needs an odd prime, got " + std::to_string(p));
  }
  auto const m = static_cast<std::int64_t>(p);
  auto const l = static_cast<unsigned>(((lambda % m) + m) % m);
  FamilyVector out;
  out.vector.p = p;
  out.vector.e.assign(p - 1, 1);
  out.vector.e.back() = l;
  out.theorem_compliant = l != 1 && l != 2;
  if (require_compliant && !out.theorem_compliant) {
    throw InvalidInput("lambda = " + std::to_string(l) + " is excluded (lambda must not be 1 or 2)");
  }
  return out;
}

AbelianizationVector theta(const Word& g, const GgsGroup& G) {
  unsigned const p = G.degree();
  AbelianizationVector v;
  for (auto const& s : g.syllables()) {
    (s.gen == Generator::a ? v.a_exp : v.b_exp) += s.exponent;
  }
  v.a_exp %= p;
  v.b_exp %= p;
  return v;
}

bool in_derived_kernel(const Word& g, const GgsGroup& G) { return theta(g, G).is_zero(); }

}  // namespace branchlab

#include "branchlab/element.hpp"

#include <array>
#include <numeric>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "branchlab/error.hpp"

namespace branchlab {

RootPermutation RootPermutation::rotation(unsigned shift, unsigned p) {
  RootPermutation r;
  r.images.resize(p);
  for (unsigned x = 0; x < p; ++x) {
    r.images[x] = static_cast<std::uint8_t>((x + shift) % p);
  }
  return r;
}

bool RootPermutation::is_identity() const {
  for (std::size_t x = 0; x < images.size(); ++x) {
    if (images[x] != x) {
      return false;
    }
  }
  return true;
}

const RootPermutation& Portrait::at(const Vertex& v) const {
  if (v.length() >= depth) {
    throw InvalidInput("portrait: vertex below the portrait depth");
  }
  std::size_t offset = 0;
  std::size_t width = 1;
  for (std::size_t l = 0; l < v.length(); ++l) {
    offset += width;
    width *= degree;
  }
  return nodes.at(offset + vertex_index(v, degree));
}

bool Portrait::is_trivial() const {
  for (auto const& n : nodes) {
    if (!n.is_identity()) {
      return false;
    }
  }
  return true;
}

Word mul(const Word& g, const Word& h, const GgsGroup& G) {
  std::array<Word, 2> const f{g, h};
  return reduce_concat(f, G.degree());
}

Word inv(const Word& g, const GgsGroup& G) {
  unsigned const p = G.degree();
  std::vector<RawSyllable> raw;
  raw.reserve(g.length());
  auto const syl = g.syllables();
  for (std::size_t i = syl.size(); i-- > 0;) {
    raw.push_back({syl[i].gen, static_cast<std::int64_t>(p - syl[i].exponent)});
  }
  return reduce(raw, p);
}

Word power(const Word& g, std::uint64_t k, const GgsGroup& G) {
  Word result;
  Word base = g;
  while (k > 0) {
    if (k & 1) {
      result = mul(result, base, G);
    }
    k >>= 1;
    if (k > 0) {
      base = mul(base, base, G);
    }
  }
  return result;
}

Word commutator(const Word& g, const Word& h, const GgsGroup& G) {
  std::array<Word, 4> const f{inv(g, G), inv(h, G), g, h};
  return reduce_concat(f, G.degree());
}

RootPermutation root_perm(const Word& g, const GgsGroup& G) {
  unsigned shift = 0;
  for (auto const& s : g.syllables()) {
    if (s.gen == Generator::a) {
      shift += s.exponent;
    }
  }
  return RootPermutation::rotation(shift % G.degree(), G.degree());
}

Word section(const Word& g, unsigned x, const GgsGroup& G) {
  if (x >= G.degree()) {
    throw InvalidInput("section: letter " + std::to_string(x) + " out of range for degree " +
                       std::to_string(G.degree()));
  }
  return G.decompose(g)->sections[x];
}

Word section(const Word& g, const Vertex& v, const GgsGroup& G) {
  Word cur = g;
  for (auto x : v.letters) {
    cur = section(cur, x, G);
  }
  return cur;
}

Vertex act(const Word& g, const Vertex& v, const GgsGroup& G) {
  unsigned const p = G.degree();
  Vertex out;
  out.letters.resize(v.length());
  Word cur = g;
  for (std::size_t t = 0; t < v.length(); ++t) {
    if (v.letters[t] >= p) {
      throw InvalidInput("act: vertex letter out of range");
    }
    if (cur.empty()) {
      std::copy(v.letters.begin() + static_cast<std::ptrdiff_t>(t), v.letters.end(),
                out.letters.begin() + static_cast<std::ptrdiff_t>(t));
      break;
    }
    auto const d = G.decompose(cur);
    out.letters[t] = static_cast<std::uint8_t>((v.letters[t] + d->rotation) % p);
    cur = d->sections[v.letters[t]];
  }
  return out;
}

SectionClosure section_closure(const Word& g, std::size_t state_cap, const GgsGroup& G) {
  unsigned const p = G.degree();
  SectionClosure c;
  std::unordered_map<Word, std::uint32_t, WordHash> index;
  index.emplace(g, 0);
  c.states.push_back(g);
  for (std::size_t s = 0; s < c.states.size(); ++s) {
    auto const d = G.decompose(c.states[s]);
    c.root_perms.push_back(RootPermutation::rotation(d->rotation, p));
    std::vector<std::uint32_t> row(p);
    for (unsigned x = 0; x < p; ++x) {
      auto [it, inserted] = index.emplace(d->sections[x], static_cast<std::uint32_t>(c.states.size()));
      if (inserted) {
        if (c.states.size() >= state_cap) {
          c.complete = false;
          c.transitions.push_back(std::move(row));
          return c;
        }
        c.states.push_back(d->sections[x]);
      }
      row[x] = it->second;
    }
    c.transitions.push_back(std::move(row));
  }
  return c;
}

bool is_identity(const Word& g, const GgsGroup& G) {
  if (g.empty()) {
    return true;
  }
  std::size_t const cap = G.options().state_budget;
  std::unordered_set<Word, WordHash> seen{g};
  std::queue<Word> todo;
  todo.push(g);
  while (!todo.empty()) {
    auto const d = G.decompose(todo.front());
    todo.pop();
    if (d->rotation != 0) {
      return false;
    }
    for (auto const& s : d->sections) {
      if (s.empty() || !seen.insert(s).second) {
        continue;
      }
      if (seen.size() > cap) {
        throw InvariantViolation("is_identity: section closure exceeded " + std::to_string(cap) +
                                 " states for \"" + to_string(g).substr(0, 80) + "\"");
      }
      todo.push(s);
    }
  }
  return true;
}

bool equal(const Word& g, const Word& h, const GgsGroup& G) {
  if (g == h) {
    return true;
  }
  return is_identity(mul(g, inv(h, G), G), G);
}

Portrait portrait(const Word& g, unsigned depth, const GgsGroup& G) {
  unsigned const p = G.degree();
  Portrait out;
  out.degree = p;
  out.depth = depth;
  std::vector<Word> level{g};
  for (unsigned l = 0; l < depth; ++l) {
    std::vector<Word> next;
    if (l + 1 < depth) {
      next.reserve(level.size() * p);
    }
    for (auto const& w : level) {
      auto const d = G.decompose(w);
      out.nodes.push_back(RootPermutation::rotation(d->rotation, p));
      if (l + 1 < depth) {
        next.insert(next.end(), d->sections.begin(), d->sections.end());
      }
    }
    level = std::move(next);
  }
  return out;
}

std::vector<std::uint32_t> level_action(const Word& g, unsigned n, const GgsGroup& G) {
  unsigned const p = G.degree();
  // Frontier holds, for each vertex of the current length, the image prefix
  // index and the section there.
  std::vector<std::uint32_t> image{0};
  std::vector<Word> sections{g};
  for (unsigned l = 0; l < n; ++l) {
    std::vector<std::uint32_t> next_image(image.size() * p);
    std::vector<Word> next_sections(image.size() * p);
    for (std::size_t i = 0; i < image.size(); ++i) {
      auto const d = G.decompose(sections[i]);
      for (unsigned x = 0; x < p; ++x) {
        next_image[i * p + x] = image[i] * p + (x + d->rotation) % p;
        next_sections[i * p + x] = d->sections[x];
      }
    }
    image = std::move(next_image);
    sections = std::move(next_sections);
  }
  return image;
}

namespace {

// Order of a permutation given by its images, saturating above `cap`.
std::uint64_t perm_order(const std::vector<std::uint32_t>& images, std::uint64_t cap) {
  std::vector<bool> done(images.size(), false);
  std::uint64_t order = 1;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (done[i]) {
      continue;
    }
    std::uint64_t len = 0;
    for (std::size_t j = i; !done[j]; j = images[j]) {
      done[j] = true;
      ++len;
    }
    order = std::lcm(order, len);
    if (order > cap) {
      return cap + 1;
    }
  }
  return order;
}

}  // namespace

OrderResult order_up_to(const Word& g, std::uint64_t bound, const GgsGroup& G) {
  if (bound < 1) {
    throw InvalidInput("order_up_to: bound must be at least 1");
  }
  if (is_identity(g, G)) {
    return {1};
  }
  unsigned const p = G.degree();
  std::uint64_t step = 1;
  std::size_t width = p;
  for (unsigned n = 1; width <= G.options().order_probe_degree; ++n, width *= p) {
    step = std::max(step, perm_order(level_action(g, n, G), bound));
    if (step > bound) {
      return {};
    }
  }
  Word const g_step = power(g, step, G);
  Word cur = g_step;
  for (std::uint64_t k = step; k <= bound; k += step) {
    if (is_identity(cur, G)) {
      return {k};
    }
    cur = mul(cur, g_step, G);
  }
  return {};
}

std::size_t activity_profile(const Word& g, unsigned n, const GgsGroup& G) {
  std::unordered_map<Word, std::size_t, WordHash> level{{g, 1}};
  for (unsigned l = 0; l < n; ++l) {
    std::unordered_map<Word, std::size_t, WordHash> next;
    for (auto const& [w, count] : level) {
      if (w.empty()) {
        continue;
      }
      for (auto const& s : G.decompose(w)->sections) {
        next[s] += count;
      }
    }
    level = std::move(next);
  }
  std::size_t active = 0;
  for (auto const& [w, count] : level) {
    if (!is_identity(w, G)) {
      active += count;
    }
  }
  return active;
}

FiniteStateResult is_finite_state(const Word& g, std::size_t state_cap, const GgsGroup& G) {
  auto const c = section_closure(g, state_cap, G);
  return {c.complete, c.states.size()};
}

}  // namespace branchlab

#include "branchlab/perm_group.hpp"

#include <set>

#include "branchlab/error.hpp"

namespace branchlab {

PermutationGroup::PermutationGroup(std::size_t degree, std::vector<Perm> generators,
                                   std::vector<std::uint32_t> base_prefix)
    : degree_(degree) {
  std::set<std::uint32_t> used;
  for (auto b : base_prefix) {
    if (b >= degree_ || !used.insert(b).second) {
      throw InvalidInput("base prefix must list distinct points below the degree");
    }
    push_level(b);
  }
  for (auto& g : generators) {
    if (g.degree() != degree_) {
      throw InvalidInput("generator degree mismatch");
    }
  }
  for (auto const& g : generators) {
    add_generator(g);
  }
}

void PermutationGroup::push_level(std::uint32_t base) {
  Level l;
  l.base = base;
  l.position.assign(degree_, -1);
  l.position[base] = 0;
  l.orbit.assign(1, base);
  l.reps.assign(1, Perm::identity(degree_));
  l.rep_inverses = l.reps;
  l.checked.assign(1, 0);
  levels_.push_back(std::move(l));
}

std::pair<Perm, std::size_t> PermutationGroup::sift(Perm h, std::size_t from) const {
  for (std::size_t m = from; m < levels_.size(); ++m) {
    auto const& l = levels_[m];
    auto const pos = l.position[h[l.base]];
    if (pos < 0) {
      return {std::move(h), m};
    }
    if (pos > 0) {
      h = l.rep_inverses[static_cast<std::size_t>(pos)] * h;
    }
  }
  return {std::move(h), levels_.size()};
}

void PermutationGroup::add_generator(const Perm& g) {
  if (g.degree() != degree_) {
    throw InvalidInput("generator degree mismatch");
  }
  if (contains(g)) {
    return;
  }
  generators_.push_back(g);
  // g belongs to every level whose base prefix it fixes.
  std::size_t last = 0;
  while (last < levels_.size() && g[levels_[last].base] == levels_[last].base) {
    ++last;
  }
  if (last == levels_.size()) {
    push_level(static_cast<std::uint32_t>(g.first_moved()));
  }
  for (std::size_t l = 0; l <= last; ++l) {
    levels_[l].gens.push_back(g);
  }
  complete();
}

// Invariant: when level i is scanned, every level below it is complete, so a
// residue that fails to sift really extends the chain.
void PermutationGroup::complete() {
  auto i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    auto const li = static_cast<std::size_t>(i);
    bool extended = false;
    for (std::size_t k = 0; k < levels_[li].orbit.size() && !extended; ++k) {
      while (levels_[li].checked[k] < levels_[li].gens.size()) {
        auto& l = levels_[li];
        Perm const& s = l.gens[l.checked[k]++];
        auto const img = s[l.orbit[k]];
        if (l.position[img] < 0) {
          l.position[img] = static_cast<std::int32_t>(l.orbit.size());
          l.orbit.push_back(img);
          l.reps.push_back(s * l.reps[k]);
          l.rep_inverses.push_back(l.reps.back().inverse());
          l.checked.push_back(0);
          continue;
        }
        Perm h = l.rep_inverses[static_cast<std::size_t>(l.position[img])] * (s * l.reps[k]);
        if (h.is_identity()) {
          continue;
        }
        auto [residue, stop] = sift(std::move(h), li + 1);
        if (residue.is_identity()) {
          continue;
        }
        if (stop == levels_.size()) {
          push_level(static_cast<std::uint32_t>(residue.first_moved()));
        }
        for (std::size_t m = li + 1; m <= stop; ++m) {
          levels_[m].gens.push_back(residue);
        }
        i = static_cast<std::ptrdiff_t>(stop);
        extended = true;
        break;
      }
    }
    if (!extended) {
      --i;
    }
  }
}

BigInt PermutationGroup::order() const {
  BigInt n = 1;
  for (auto const& l : levels_) {
    n *= l.orbit.size();
  }
  return n;
}

bool PermutationGroup::contains(const Perm& g) const {
  if (g.degree() != degree_) {
    throw InvalidInput("membership: degree mismatch (" + std::to_string(g.degree()) + " vs " +
                       std::to_string(degree_) + ")");
  }
  return sift(g, 0).first.is_identity();
}

std::vector<std::uint32_t> PermutationGroup::base() const {
  std::vector<std::uint32_t> b;
  for (auto const& l : levels_) {
    b.push_back(l.base);
  }
  return b;
}

std::vector<std::size_t> PermutationGroup::transversal_sizes() const {
  std::vector<std::size_t> t;
  for (auto const& l : levels_) {
    t.push_back(l.orbit.size());
  }
  return t;
}

std::vector<Perm> PermutationGroup::strong_generators() const {
  std::set<Perm> seen;
  std::vector<Perm> out;
  for (auto const& l : levels_) {
    for (auto const& g : l.gens) {
      if (seen.insert(g).second) {
        out.push_back(g);
      }
    }
  }
  return out;
}

PermutationGroup PermutationGroup::prefix_stabilizer(std::size_t count) const {
  if (count >= levels_.size()) {
    return PermutationGroup(degree_);
  }
  return PermutationGroup(degree_, levels_[count].gens);
}

std::vector<std::uint32_t> PermutationGroup::orbit(std::uint32_t point) const {
  std::vector<bool> seen(degree_, false);
  std::vector<std::uint32_t> out{point};
  seen[point] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (auto const& g : generators_) {
      auto const img = g[out[i]];
      if (!seen[img]) {
        seen[img] = true;
        out.push_back(img);
      }
    }
  }
  return out;
}

bool PermutationGroup::is_transitive() const { return degree_ == 0 || orbit(0).size() == degree_; }

}  // namespace branchlab

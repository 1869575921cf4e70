#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "branchlab/perm.hpp"

namespace branchlab {

using BigInt = boost::multiprecision::cpp_int;

// Finite permutation group with a base and strong generating set, built by
// deterministic incremental Schreier-Sims. Base points are taken from the
// optional prescribed prefix first, then as the smallest point moved by the
// generator that forced the extension.
//
// A strong generator found while checking level i is only attached to levels
// i+1..j (j = where its sift failed); the upper levels already generate it.
// Orbits grow in place and every orbit point remembers how many generators it
// has been checked against, so each Schreier generator is sifted once.
class PermutationGroup {
 public:
  explicit PermutationGroup(std::size_t degree, std::vector<Perm> generators = {},
                            std::vector<std::uint32_t> base_prefix = {});

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return generators_; }

  BigInt order() const;
  bool contains(const Perm& g) const;  // throws InvalidInput on degree mismatch

  // Adds g to the generating set unless it is already a member.
  void add_generator(const Perm& g);

  std::vector<std::uint32_t> base() const;
  std::vector<std::size_t> transversal_sizes() const;
  std::vector<Perm> strong_generators() const;

  // Pointwise stabilizer of the first `count` base points.
  PermutationGroup prefix_stabilizer(std::size_t count) const;

  std::vector<std::uint32_t> orbit(std::uint32_t point) const;
  bool is_transitive() const;

 private:
  struct Level {
    std::uint32_t base = 0;
    std::vector<Perm> gens;
    std::vector<std::int32_t> position;  // point -> index in orbit, -1 if absent
    std::vector<std::uint32_t> orbit;
    std::vector<Perm> reps;  // reps[i](base) == orbit[i]
    std::vector<Perm> rep_inverses;
    std::vector<std::size_t> checked;  // per orbit point: generators already processed
  };

  void push_level(std::uint32_t base);
  // Strips h through levels [from, size); returns the residue and the level
  // where stripping stopped (size() when it went all the way through).
  std::pair<Perm, std::size_t> sift(Perm h, std::size_t from) const;
  void complete();

  std::size_t degree_;
  std::vector<Perm> generators_;
  std::vector<Level> levels_;
};

}  // namespace branchlab

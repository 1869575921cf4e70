#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "branchlab/word.hpp"

namespace branchlab {

bool is_prime(unsigned n);

// Defining data of a GGS group: prime p and e in F_p^{p-1}, e != 0.
struct GgsVector {
  unsigned p = 0;
  std::vector<unsigned> e;

  friend bool operator==(const GgsVector&, const GgsVector&) = default;
};

std::string to_string(const GgsVector& v);  // "p=3 e=(1,0)"

struct EngineOptions {
  // Cap on the number of section-closure states explored by one identity test.
  std::size_t state_budget = 100000;
  bool memoize = true;
  // Largest level degree p^n used to bound orders from the finite quotients.
  std::size_t order_probe_degree = 729;
};

// Root rotation plus the p first-level sections of a word.
struct Decomposition {
  std::uint8_t rotation = 0;
  std::vector<Word> sections;
};

// Immutable GGS context: b = (a^{e_1}, ..., a^{e_{p-1}}, b), a: x -> x+1.
//
// Composition is (g*h)(v) = g(h(v)), so the rightmost syllable acts first and
// (g*h)|_x = g|_{h(x)} * h|_x. The decomposition cache is shared between
// copies; it is keyed on reduced words and is safe for concurrent use.
class GgsGroup {
 public:
  explicit GgsGroup(GgsVector vector, EngineOptions options = {});

  unsigned degree() const { return vector_.p; }
  const GgsVector& vector() const { return vector_; }
  const EngineOptions& options() const { return options_; }

  Word a() const { return generator_power(Generator::a, 1, vector_.p); }
  Word b() const { return generator_power(Generator::b, 1, vector_.p); }

  // Section of b^k at letter x: a^{k e_{x+1}} for x < p-1, b^k at x = p-1.
  Syllable b_section(std::uint8_t exponent, unsigned x) const;

  std::shared_ptr<const Decomposition> decompose(const Word& w) const;

  std::size_t cache_size() const;
  void clear_cache() const;

 private:
  Decomposition compute(const Word& w) const;

  struct Cache;
  GgsVector vector_;
  EngineOptions options_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace branchlab

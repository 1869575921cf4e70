#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace branchlab {

enum class Generator : std::uint8_t { a = 0, b = 1 };

constexpr char letter(Generator g) { return g == Generator::a ? 'a' : 'b'; }
constexpr Generator other(Generator g) { return g == Generator::a ? Generator::b : Generator::a; }

// One factor a^k or b^k of a reduced word, with 1 <= k <= p-1.
struct Syllable {
  Generator gen;
  std::uint8_t exponent;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

// Unreduced input syllable; the exponent is an arbitrary integer.
struct RawSyllable {
  Generator gen;
  std::int64_t exponent;
};

// Alternating product of syllables, exponents in 1..p-1. The empty word is the
// identity. Words only come out of reduce() (or operations built on it), so
// the alternation invariant always holds.
class Word {
 public:
  Word() = default;

  std::span<const Syllable> syllables() const { return syllables_; }
  std::size_t length() const { return syllables_.size(); }
  bool empty() const { return syllables_.empty(); }
  const Syllable& operator[](std::size_t i) const { return syllables_[i]; }

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  friend Word reduce(std::span<const RawSyllable>, unsigned);
  friend Word reduce_concat(std::span<const Word>, unsigned);
  std::vector<Syllable> syllables_;
};

// Free reduction in Z/p * Z/p: merge neighbours with equal generator, reduce
// exponents mod p, drop zero exponents. Cancellation cascades.
Word reduce(std::span<const RawSyllable> raw, unsigned p);

// reduce() applied to the concatenation of already reduced words.
Word reduce_concat(std::span<const Word> factors, unsigned p);

Word generator_power(Generator g, std::int64_t exponent, unsigned p);

// Text form "a1 b2 a1": whitespace separated <letter><decimal exponent>
// tokens; the empty string is the identity. Exponents are reduced mod p.
std::string to_string(const Word& w);
Word parse_word(std::string_view text, unsigned p);

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

// A vertex of the p-regular rooted tree: a word over the letters 0..p-1.
struct Vertex {
  std::vector<std::uint8_t> letters;

  std::size_t length() const { return letters.size(); }
  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

// Letters are written as base-36 digits ("021"); the empty string is the root.
std::string to_string(const Vertex& v);
Vertex parse_vertex(std::string_view text, unsigned p);

// Lexicographic index of a vertex among all vertices of its length.
std::size_t vertex_index(const Vertex& v, unsigned p);
Vertex vertex_at(std::size_t index, unsigned level, unsigned p);

}  // namespace branchlab

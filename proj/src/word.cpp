#include "branchlab/word.hpp"

#include <cctype>
#include <charconv>

#include "branchlab/error.hpp"

namespace branchlab {

namespace {

std::uint8_t residue(std::int64_t x, unsigned p) {
  auto const m = static_cast<std::int64_t>(p);
  return static_cast<std::uint8_t>(((x % m) + m) % m);
}

void push_reduced(std::vector<Syllable>& out, Generator gen, std::uint8_t exp, unsigned p) {
  if (exp == 0) {
    return;
  }
  if (!out.empty() && out.back().gen == gen) {
    auto const merged = static_cast<std::uint8_t>((out.back().exponent + exp) % p);
    if (merged == 0) {
      out.pop_back();
    } else {
      out.back().exponent = merged;
    }
    return;
  }
  out.push_back({gen, exp});
}

char digit36(unsigned d) { return static_cast<char>(d < 10 ? '0' + d : 'a' + (d - 10)); }

}  // namespace

Word reduce(std::span<const RawSyllable> raw, unsigned p) {
  Word w;
  w.syllables_.reserve(raw.size());
  for (auto const& s : raw) {
    push_reduced(w.syllables_, s.gen, residue(s.exponent, p), p);
  }
  return w;
}

Word reduce_concat(std::span<const Word> factors, unsigned p) {
  Word w;
  std::size_t total = 0;
  for (auto const& f : factors) {
    total += f.length();
  }
  w.syllables_.reserve(total);
  for (auto const& f : factors) {
    for (auto const& s : f.syllables()) {
      push_reduced(w.syllables_, s.gen, s.exponent, p);
    }
  }
  return w;
}

Word generator_power(Generator g, std::int64_t exponent, unsigned p) {
  RawSyllable const raw{g, exponent};
  return reduce(std::span(&raw, 1), p);
}

std::string to_string(const Word& w) {
  std::string out;
  for (auto const& s : w.syllables()) {
    if (!out.empty()) {
      out += ' ';
    }
    out += letter(s.gen);
    out += std::to_string(s.exponent);
  }
  return out;
}

Word parse_word(std::string_view text, unsigned p) {
  std::vector<RawSyllable> raw;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    char const c = text[i];
    if (c != 'a' && c != 'b') {
      throw InvalidInput("word: expected 'a' or 'b' at offset " + std::to_string(i) + " in \"" +
                         std::string(text) + "\"");
    }
    ++i;
    std::size_t j = i;
    if (j < text.size() && text[j] == '-') {
      ++j;
    }
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    std::int64_t exp = 0;
    auto const [ptr, ec] = std::from_chars(text.data() + i, text.data() + j, exp);
    if (ec != std::errc{} || ptr != text.data() + j) {
      throw InvalidInput("word: missing or malformed exponent after '" + std::string(1, c) +
                         "' in \"" + std::string(text) + "\"");
    }
    if (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) {
      throw InvalidInput("word: tokens must be whitespace separated in \"" + std::string(text) + "\"");
    }
    raw.push_back({c == 'a' ? Generator::a : Generator::b, exp});
    i = j;
  }
  return reduce(raw, p);
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (auto const& s : w.syllables()) {
    h ^= (static_cast<std::size_t>(s.gen) << 8) | s.exponent;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_string(const Vertex& v) {
  std::string out;
  out.reserve(v.letters.size());
  for (auto x : v.letters) {
    out += digit36(x);
  }
  return out;
}

Vertex parse_vertex(std::string_view text, unsigned p) {
  Vertex v;
  for (char c : text) {
    unsigned d = 0;
    if (c >= '0' && c <= '9') {
      d = static_cast<unsigned>(c - '0');
    } else if (c >= 'a' && c <= 'z') {
      d = static_cast<unsigned>(c - 'a') + 10;
    } else {
      throw InvalidInput("vertex: invalid letter '" + std::string(1, c) + "'");
    }
    if (d >= p) {
      throw InvalidInput("vertex: letter '" + std::string(1, c) + "' out of range for degree " +
                         std::to_string(p));
    }
    v.letters.push_back(static_cast<std::uint8_t>(d));
  }
  return v;
}

std::size_t vertex_index(const Vertex& v, unsigned p) {
  std::size_t idx = 0;
  for (auto x : v.letters) {
    idx = idx * p + x;
  }
  return idx;
}

Vertex vertex_at(std::size_t index, unsigned level, unsigned p) {
  Vertex v;
  v.letters.resize(level);
  for (unsigned t = level; t-- > 0;) {
    v.letters[t] = static_cast<std::uint8_t>(index % p);
    index /= p;
  }
  return v;
}

}  // namespace branchlab

#include "branchlab/group.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "branchlab/error.hpp"

namespace branchlab {

namespace {
constexpr std::size_t kMaxCacheEntries = std::size_t{1} << 20;
}

struct GgsGroup::Cache {
  mutable std::shared_mutex mutex;
  std::unordered_map<Word, std::shared_ptr<const Decomposition>, WordHash> map;
};

bool is_prime(unsigned n) {
  if (n < 2) {
    return false;
  }
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      return false;
    }
  }
  return true;
}

std::string to_string(const GgsVector& v) {
  std::string out = "p=" + std::to_string(v.p) + " e=(";
  for (std::size_t i = 0; i < v.e.size(); ++i) {
    if (i) {
      out += ',';
    }
    out += std::to_string(v.e[i]);
  }
  return out + ")";
}

GgsGroup::GgsGroup(GgsVector vector, EngineOptions options)
    : vector_(std::move(vector)), options_(options), cache_(std::make_shared<Cache>()) {
  if (!is_prime(vector_.p) || vector_.p > 251) {
    throw InvalidInput("p must be a prime below 256, got " + std::to_string(vector_.p));
  }
  if (vector_.e.size() != vector_.p - 1) {
    throw InvalidInput("defining vector must have length p-1 = " + std::to_string(vector_.p - 1) +
                       ", got " + std::to_string(vector_.e.size()));
  }
  bool nonzero = false;
  for (auto& x : vector_.e) {
    x %= vector_.p;
    nonzero = nonzero || x != 0;
  }
  if (!nonzero) {
    throw InvalidInput("defining vector must be non-zero mod p");
  }
}

Syllable GgsGroup::b_section(std::uint8_t exponent, unsigned x) const {
  unsigned const p = vector_.p;
  if (x + 1 == p) {
    return {Generator::b, exponent};
  }
  return {Generator::a, static_cast<std::uint8_t>((exponent * vector_.e[x]) % p)};
}

Decomposition GgsGroup::compute(const Word& w) const {
  unsigned const p = vector_.p;
  Decomposition d;
  unsigned rot = 0;
  for (auto const& s : w.syllables()) {
    if (s.gen == Generator::a) {
      rot += s.exponent;
    }
  }
  d.rotation = static_cast<std::uint8_t>(rot % p);
  d.sections.reserve(p);

  auto const syl = w.syllables();
  std::vector<RawSyllable> raw;
  raw.reserve(syl.size());
  for (unsigned x = 0; x < p; ++x) {
    // Walk right to left tracking the letter each syllable sees; the section
    // factors are then emitted in word order.
    raw.clear();
    unsigned y = x;
    for (std::size_t i = syl.size(); i-- > 0;) {
      if (syl[i].gen == Generator::a) {
        y = (y + syl[i].exponent) % p;
      } else {
        auto const sec = b_section(syl[i].exponent, y);
        raw.push_back({sec.gen, sec.exponent});
      }
    }
    std::reverse(raw.begin(), raw.end());
    d.sections.push_back(reduce(raw, p));
  }
  return d;
}

std::shared_ptr<const Decomposition> GgsGroup::decompose(const Word& w) const {
  if (!options_.memoize) {
    return std::make_shared<const Decomposition>(compute(w));
  }
  {
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->map.find(w);
    if (it != cache_->map.end()) {
      return it->second;
    }
  }
  auto d = std::make_shared<const Decomposition>(compute(w));
  std::unique_lock lock(cache_->mutex);
  if (cache_->map.size() >= kMaxCacheEntries) {
    cache_->map.clear();
  }
  cache_->map.insert_or_assign(w, d);
  return d;
}

std::size_t GgsGroup::cache_size() const {
  std::shared_lock lock(cache_->mutex);
  return cache_->map.size();
}

void GgsGroup::clear_cache() const {
  std::unique_lock lock(cache_->mutex);
  cache_->map.clear();
}

}  // namespace branchlab

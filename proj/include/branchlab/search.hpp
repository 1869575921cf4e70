#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "branchlab/group.hpp"
#include "branchlab/word.hpp"

namespace branchlab {

enum class Arena { full, kernel };
enum class SearchKind { unique_product, diffuse };
enum class SearchMode { exhaustive, random };

std::string to_string(Arena a);  // "full" | "kernel"
std::string to_string(SearchKind k);
std::string to_string(SearchMode m);
Arena parse_arena(std::string_view s);
SearchMode parse_mode(std::string_view s);
// Report label: "full-ball" or "theta-kernel-ball".
std::string arena_label(Arena a);

// Portrait to `depth` as one base-36 rotation digit per vertex (dot separated
// decimals when p > 36), levels separated by '/'.
std::string canonical_key(const Word& g, unsigned depth, const GgsGroup& G);

// Exact equality classes. Words are bucketed by portrait fingerprint and
// resolved inside a bucket with equal(), so two words share a class iff they
// are the same group element.
class ElementIndex {
 public:
  explicit ElementIndex(const GgsGroup& G, unsigned fingerprint_depth = 4);

  // Class id of w, and whether w opened a new class.
  std::pair<std::size_t, bool> insert(const Word& w);
  std::optional<std::size_t> find(const Word& w) const;

  const Word& representative(std::size_t id) const { return reps_[id]; }
  std::size_t size() const { return reps_.size(); }

 private:
  const GgsGroup* group_;
  unsigned depth_;
  std::unordered_map<std::string, std::vector<std::size_t>> buckets_;
  std::vector<Word> reps_;
};

// Elements of word length <= radius (syllable count), deduplicated, ordered
// by (length, text form). keys[i] is the canonical key at key_depth, the
// smallest depth at which the keys of the elements are pairwise distinct.
struct Ball {
  GgsVector vector;
  Arena arena = Arena::full;
  unsigned radius = 0;
  unsigned key_depth = 1;
  std::vector<Word> elements;
  std::vector<std::string> keys;
};

inline constexpr std::size_t kDefaultElementBudget = 1000000;

// Throws BudgetExceeded rather than truncating when more than element_budget
// candidate words would have to be examined.
Ball ball(const GgsGroup& G, unsigned radius, Arena arena,
          std::size_t element_budget = kDefaultElementBudget);

unsigned certified_key_depth(const std::vector<Word>& elements, const GgsGroup& G,
                             unsigned max_depth = 24);

// Non-empty, pairwise distinct group elements.
using FiniteSubset = std::vector<Word>;
void validate_subset(const FiniteSubset& A, const GgsGroup& G);

struct ProductClass {
  Word representative;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Every (i, j) with i < |A|, j < |B| appears in exactly one class.
struct ProductTable {
  std::vector<ProductClass> classes;
};

ProductTable product_table(const FiniteSubset& A, const FiniteSubset& B, const GgsGroup& G);

struct UniqueProduct {
  Word product;
  std::size_t i = 0;
  std::size_t j = 0;
};

std::vector<UniqueProduct> unique_products(const FiniteSubset& A, const FiniteSubset& B,
                                           const GgsGroup& G);
std::size_t up_count(const FiniteSubset& A, const FiniteSubset& B, const GgsGroup& G);
// Requires |A| |B| >= 2.
bool has_two_unique_products(const FiniteSubset& A, const FiniteSubset& B, const GgsGroup& G);

// a in A is non-extremal iff a a'^-1 a in A for some a' != a in A: s = a^-1 a'
// runs over every s != 1 with as in A.
std::vector<std::size_t> extremal_elements(const FiniteSubset& A, const GgsGroup& G);
bool is_diffuse_witness(const FiniteSubset& A, const GgsGroup& G);

// Recomputations by pairwise equal() only, without ElementIndex; used to
// re-verify search findings.
std::size_t up_count_pairwise(const FiniteSubset& A, const FiniteSubset& B, const GgsGroup& G);
std::size_t extremal_count_pairwise(const FiniteSubset& A, const GgsGroup& G);

struct SearchParams {
  Arena arena = Arena::kernel;
  unsigned radius = 0;
  unsigned max_subset_size = 2;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t samples = 1000;  // random mode item count
  std::uint64_t budget = 0;      // items processed per run, 0 = no limit
  std::uint64_t start_cursor = 0;
  unsigned workers = 1;
  std::size_t witness_limit = 64;
  bool verify_all = false;
  std::size_t element_budget = kDefaultElementBudget;
};

struct Witness {
  std::uint64_t cursor = 0;
  std::vector<std::size_t> a;  // indices into the arena ball
  std::vector<std::size_t> b;  // empty for diffuse searches
  std::size_t count = 0;
  std::size_t recomputed = 0;  // independent recount
  // Unique products (UP) or, per element of A, the a' exhibiting non-extremality.
  std::vector<std::string> transcript;
};

struct SearchReport {
  SearchKind kind = SearchKind::unique_product;
  GgsVector vector;
  Arena arena = Arena::kernel;
  unsigned radius = 0;
  unsigned max_subset_size = 0;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::vector<Word> arena_elements;
  unsigned key_depth = 1;
  std::uint64_t total_items = 0;
  std::uint64_t start_cursor = 0;
  std::uint64_t cursor = 0;  // next unprocessed item
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;  // items with |A||B| < 2
  std::uint64_t verified = 0;
  std::optional<std::size_t> minimum;
  std::map<std::size_t, std::uint64_t> histogram;
  std::uint64_t witness_total = 0;
  std::vector<Witness> witnesses;

  bool complete() const { return cursor == total_items; }
  // UP searches: some evaluated pair had fewer than two unique products.
  bool below_two() const {
    return kind == SearchKind::unique_product && minimum && *minimum < 2;
  }
};

// Exhaustive mode walks pairs (A, B) of subsets of the arena with sizes
// 1..max_subset_size, subsets ordered by (size, index vector), item t being
// (subset[t / S], subset[t % S]). Random mode derives item t from (seed, t)
// alone, so reports do not depend on the worker count or on resumption.
// Witnesses are pairs with at most one unique product.
SearchReport up_search(const GgsGroup& G, const SearchParams& params, const Ball* arena = nullptr);

// Items are single subsets; witnesses have no extremal element.
SearchReport diffuse_search(const GgsGroup& G, const SearchParams& params,
                            const Ball* arena = nullptr);

// Joins a report with its continuation (later.start_cursor == earlier.cursor).
SearchReport merge_reports(const SearchReport& earlier, const SearchReport& later,
                           std::size_t witness_limit);

// Subsets of {0..n-1} of sizes 1..max_size in (size, lexicographic) order.
std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t n, unsigned max_size);

}  // namespace branchlab

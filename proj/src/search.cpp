#include "branchlab/search.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <random>
#include <thread>

#include "branchlab/element.hpp"
#include "branchlab/error.hpp"
#include "branchlab/ggs.hpp"

namespace branchlab {

std::string to_string(Arena a) { return a == Arena::full ? "full" : "kernel"; }
std::string to_string(SearchKind k) { return k == SearchKind::unique_product ? "up" : "diffuse"; }
std::string to_string(SearchMode m) { return m == SearchMode::exhaustive ? "exhaustive" : "random"; }
std::string arena_label(Arena a) { return a == Arena::full ? "full-ball" : "theta-kernel-ball"; }

Arena parse_arena(std::string_view s) {
  if (s == "full") {
    return Arena::full;
  }
  if (s == "kernel") {
    return Arena::kernel;
  }
  throw InvalidInput("arena must be 'full' or 'kernel', got '" + std::string(s) + "'");
}

SearchMode parse_mode(std::string_view s) {
  if (s == "exhaustive") {
    return SearchMode::exhaustive;
  }
  if (s == "random") {
    return SearchMode::random;
  }
  throw InvalidInput("mode must be 'exhaustive' or 'random', got '" + std::string(s) + "'");
}

std::string canonical_key(const Word& g, unsigned depth, const GgsGroup& G) {
  unsigned const p = G.degree();
  auto const pic = portrait(g, depth, G);
  std::string key;
  std::size_t width = 1;
  std::size_t next_level = 1;
  for (std::size_t i = 0; i < pic.nodes.size(); ++i) {
    if (i == next_level) {
      key += '/';
      width *= p;
      next_level += width;
    } else if (p > 36 && i > 0) {
      key += '.';
    }
    unsigned const r = pic.nodes[i].images[0];
    if (p <= 36) {
      key += static_cast<char>(r < 10 ? '0' + r : 'a' + (r - 10));
    } else {
      key += std::to_string(r);
    }
  }
  return key;
}

ElementIndex::ElementIndex(const GgsGroup& G, unsigned fingerprint_depth)
    : group_(&G), depth_(fingerprint_depth) {}

std::pair<std::size_t, bool> ElementIndex::insert(const Word& w) {
  auto& bucket = buckets_[canonical_key(w, depth_, *group_)];
  for (auto id : bucket) {
    if (equal(reps_[id], w, *group_)) {
      return {id, false};
    }
  }
  bucket.push_back(reps_.size());
  reps_.push_back(w);
  return {reps_.size() - 1, true};
}

std::optional<std::size_t> ElementIndex::find(const Word& w) const {
  auto it = buckets_.find(canonical_key(w, depth_, *group_));
  if (it == buckets_.end()) {
    return std::nullopt;
  }
  for (auto id : it->second) {
    if (equal(reps_[id], w, *group_)) {
      return id;
    }
  }
  return std::nullopt;
}

namespace {

void words_of_length(unsigned length, unsigned p, std::vector<Word>& out) {
  if (length == 0) {
    out.emplace_back();
    return;
  }
  std::vector<RawSyllable> raw(length);
  for (auto first : {Generator::a, Generator::b}) {
    // Odometer over exponent vectors in 1..p-1.
    std::vector<unsigned> exps(length, 1);
    while (true) {
      Generator g = first;
      for (unsigned i = 0; i < length; ++i, g = other(g)) {
        raw[i] = {g, static_cast<std::int64_t>(exps[i])};
      }
      out.push_back(reduce(raw, p));
      unsigned i = length;
      while (i > 0 && exps[i - 1] == p - 1) {
        exps[--i] = 1;
      }
      if (i == 0) {
        break;
      }
      ++exps[i - 1];
    }
  }
}

}  // namespace

unsigned certified_key_depth(const std::vector<Word>& elements, const GgsGroup& G,
                             unsigned max_depth) {
  for (unsigned depth = 1; depth <= max_depth; ++depth) {
    std::unordered_map<std::string, std::size_t> seen;
    bool separated = true;
    for (std::size_t i = 0; i < elements.size() && separated; ++i) {
      separated = seen.emplace(canonical_key(elements[i], depth, G), i).second;
    }
    if (separated) {
      return depth;
    }
  }
  throw BudgetExceeded("canonical keys do not separate the elements up to depth " +
                       std::to_string(max_depth));
}

Ball ball(const GgsGroup& G, unsigned radius, Arena arena, std::size_t element_budget) {
  unsigned const p = G.degree();
  std::size_t candidates = 1;
  std::size_t per_length = 2;
  for (unsigned l = 1; l <= radius; ++l) {
    per_length *= (p - 1);
    candidates += per_length;
    if (candidates > element_budget || per_length > element_budget) {
      throw BudgetExceeded("ball of radius " + std::to_string(radius) + " needs more than " +
                           std::to_string(element_budget) + " candidate words");
    }
  }
  Ball out;
  out.vector = G.vector();
  out.arena = arena;
  out.radius = radius;
  ElementIndex index(G);
  for (unsigned l = 0; l <= radius; ++l) {
    std::vector<Word> words;
    words_of_length(l, p, words);
    std::vector<std::pair<std::string, Word>> sorted;
    sorted.reserve(words.size());
    for (auto& w : words) {
      sorted.emplace_back(to_string(w), std::move(w));
    }
    std::sort(sorted.begin(), sorted.end(),
              [](auto const& x, auto const& y) { return x.first < y.first; });
    for (auto& [text, w] : sorted) {
      if (arena == Arena::kernel && !in_derived_kernel(w, G)) {
        continue;
      }
      if (index.insert(w).second) {
        out.elements.push_back(std::move(w));
      }
    }
  }
  out.key_depth = certified_key_depth(out.elements, G);
  for (auto const& w : out.elements) {
    out.keys.push_back(canonical_key(w, out.key_depth, G));
  }
  return out;
}

void validate_subset(const FiniteSubset& A, const GgsGroup& G) {
  if (A.empty()) {
    throw InvalidInput("finite subset must be non-empty");
  }
  ElementIndex index(G);
  for (auto const& w : A) {
    if (!index.insert(w).second) {
      throw InvalidInput("finite subset contains a repeated element: " + to_string(w));
    }
  }
}

ProductTable product_table(const FiniteSubset& A, const FiniteSubset& B, const GgsGroup& G) {
  validate_subset(A, G);
  validate_subset(B, G);
  ProductTable table;
  ElementIndex index(G);
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < B.size(); ++j) {
      auto const [id, fresh] = index.insert(mul(A[i], B[j], G));
      if (fresh) {
        table.classes.push_back({index.representative(id), {}});
      }
      table.classes[id].pairs.emplace_back(i, j);
    }
  }
  return table;
}

std::vector<UniqueProduct> unique_products(const FiniteSubset& A, const FiniteSubset& B,
                                           const GgsGroup& G) {
  std::vector<UniqueProduct> out;
  for (auto const& c : product_table(A, B, G).classes) {
    if (c.pairs.size() == 1) {
      out.push_back({c.representative, c.pairs[0].first, c.pairs[0].second});
    }
  }
  return out;
}

std::size_t up_count(const FiniteSubset& A, const FiniteSubset& B, const GgsGroup& G) {
  return unique_products(A, B, G).size();
}

bool has_two_unique_products(const FiniteSubset& A, const FiniteSubset& B, const GgsGroup& G) {
  if (A.size() * B.size() < 2) {
    throw InvalidInput("two unique products needs |A||B| >= 2");
  }
  return up_count(A, B, G) >= 2;
}

std::vector<std::size_t> extremal_elements(const FiniteSubset& A, const GgsGroup& G) {
  validate_subset(A, G);
  ElementIndex index(G);
  for (auto const& w : A) {
    index.insert(w);
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < A.size(); ++i) {
    bool extremal = true;
    for (std::size_t j = 0; j < A.size() && extremal; ++j) {
      if (j == i) {
        continue;
      }
      std::array<Word, 3> const f{A[i], inv(A[j], G), A[i]};
      if (index.find(reduce_concat(f, G.degree()))) {
        extremal = false;
      }
    }
    if (extremal) {
      out.push_back(i);
    }
  }
  return out;
}

bool is_diffuse_witness(const FiniteSubset& A, const GgsGroup& G) {
  return extremal_elements(A, G).empty();
}

std::size_t up_count_pairwise(const FiniteSubset& A, const FiniteSubset& B, const GgsGroup& G) {
  std::vector<Word> products;
  for (auto const& x : A) {
    for (auto const& y : B) {
      products.push_back(mul(x, y, G));
    }
  }
  std::size_t unique = 0;
  for (std::size_t k = 0; k < products.size(); ++k) {
    bool alone = true;
    for (std::size_t l = 0; l < products.size() && alone; ++l) {
      alone = l == k || !equal(products[k], products[l], G);
    }
    unique += alone ? 1 : 0;
  }
  return unique;
}

namespace {

bool contains_pairwise(const FiniteSubset& A, const Word& w, const GgsGroup& G) {
  return std::any_of(A.begin(), A.end(), [&](auto const& x) { return equal(x, w, G); });
}

// The a' (if any) making A[i] non-extremal, found by testing s = a^-1 a'.
std::optional<std::size_t> nonextremal_partner(const FiniteSubset& A, std::size_t i,
                                               const GgsGroup& G) {
  for (std::size_t j = 0; j < A.size(); ++j) {
    if (j == i) {
      continue;
    }
    Word const s = mul(inv(A[i], G), A[j], G);
    if (contains_pairwise(A, mul(A[i], inv(s, G), G), G)) {
      return j;
    }
  }
  return std::nullopt;
}

}  // namespace

std::size_t extremal_count_pairwise(const FiniteSubset& A, const GgsGroup& G) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < A.size(); ++i) {
    count += nonextremal_partner(A, i, G) ? 0 : 1;
  }
  return count;
}

std::vector<std::vector<std::size_t>> enumerate_subsets(std::size_t n, unsigned max_size) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t k = 1; k <= std::min<std::size_t>(max_size, n); ++k) {
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i) {
      c[i] = i;
    }
    while (true) {
      out.push_back(c);
      std::size_t i = k;
      while (i > 0 && c[i - 1] == n - k + (i - 1)) {
        --i;
      }
      if (i == 0) {
        break;
      }
      ++c[i - 1];
      for (std::size_t j = i; j < k; ++j) {
        c[j] = c[j - 1] + 1;
      }
    }
  }
  return out;
}

namespace {

constexpr std::uint64_t kMaxItems = std::uint64_t{1} << 62;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<std::size_t> random_subset(std::mt19937_64& rng, std::size_t n, unsigned max_size) {
  auto const top = std::min<std::size_t>(max_size, n);
  std::size_t const k = 1 + static_cast<std::size_t>(rng() % top);
  std::vector<std::size_t> pool(n);
  for (std::size_t i = 0; i < n; ++i) {
    pool[i] = i;
  }
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t const j = i + static_cast<std::size_t>(rng() % (n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

struct Item {
  std::vector<std::size_t> a;
  std::vector<std::size_t> b;
  std::size_t count = 0;
};

struct Partial {
  std::optional<std::size_t> minimum;
  std::map<std::size_t, std::uint64_t> histogram;
  std::vector<Witness> witnesses;
  std::uint64_t witness_total = 0;
  std::uint64_t evaluated = 0;
  std::uint64_t skipped = 0;
  std::uint64_t verified = 0;
};

FiniteSubset pick(const Ball& arena, const std::vector<std::size_t>& idx) {
  FiniteSubset out;
  for (auto i : idx) {
    out.push_back(arena.elements[i]);
  }
  return out;
}

// Runs items [start, end) split into contiguous chunks, one per worker, and
// merges the chunk results in order.
template <typename Eval, typename Recount>
Partial run_items(std::uint64_t start, std::uint64_t end, unsigned workers, std::size_t witness_limit,
                  std::size_t witness_threshold, bool verify_all, Eval eval, Recount recount) {
  workers = std::max(1U, workers);
  std::uint64_t const span = end - start;
  std::vector<Partial> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto job = [&](unsigned w) {
    try {
      std::uint64_t const lo = start + span * w / workers;
      std::uint64_t const hi = start + span * (w + 1) / workers;
      auto& part = parts[w];
      for (std::uint64_t t = lo; t < hi; ++t) {
        auto item = eval(t);
        if (!item) {
          ++part.skipped;
          continue;
        }
        ++part.evaluated;
        if (verify_all) {
          if (recount(*item) != item->count) {
            throw InvariantViolation("search: recount disagrees at item " + std::to_string(t));
          }
          ++part.verified;
        }
        part.minimum = part.minimum ? std::min(*part.minimum, item->count) : item->count;
        ++part.histogram[item->count];
        if (item->count <= witness_threshold) {
          ++part.witness_total;
          if (part.witnesses.size() < witness_limit) {
            part.witnesses.push_back({t, std::move(item->a), std::move(item->b), item->count, 0, {}});
          }
        }
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    job(0);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back(job, w);
    }
    for (auto& t : threads) {
      t.join();
    }
  }
  for (auto const& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  Partial total;
  for (auto& part : parts) {
    if (part.minimum) {
      total.minimum = total.minimum ? std::min(*total.minimum, *part.minimum) : part.minimum;
    }
    for (auto const& [k, v] : part.histogram) {
      total.histogram[k] += v;
    }
    for (auto& w : part.witnesses) {
      if (total.witnesses.size() < witness_limit) {
        total.witnesses.push_back(std::move(w));
      }
    }
    total.witness_total += part.witness_total;
    total.evaluated += part.evaluated;
    total.skipped += part.skipped;
    total.verified += part.verified;
  }
  return total;
}

SearchReport make_report(SearchKind kind, const GgsGroup& G, const SearchParams& params,
                         const Ball& arena) {
  SearchReport r;
  r.kind = kind;
  r.vector = G.vector();
  r.arena = params.arena;
  r.radius = params.radius;
  r.max_subset_size = params.max_subset_size;
  r.mode = params.mode;
  r.seed = params.seed;
  r.samples = params.mode == SearchMode::random ? params.samples : 0;
  r.arena_elements = arena.elements;
  r.key_depth = arena.key_depth;
  return r;
}

const Ball& resolve_arena(const GgsGroup& G, const SearchParams& params, const Ball* given,
                          Ball& local) {
  if (params.max_subset_size < 1) {
    throw InvalidInput("max subset size must be at least 1");
  }
  if (given) {
    if (given->vector != G.vector() || given->arena != params.arena || given->radius != params.radius) {
      throw InvalidInput("supplied arena ball does not match the search parameters");
    }
    return *given;
  }
  local = ball(G, params.radius, params.arena, params.element_budget);
  return local;
}

std::uint64_t checked_square(std::uint64_t s) {
  if (s != 0 && s > kMaxItems / s) {
    throw BudgetExceeded("search space too large to index");
  }
  return s * s;
}

std::pair<std::uint64_t, std::uint64_t> item_range(const SearchParams& params, std::uint64_t total) {
  if (params.start_cursor > total) {
    throw InvalidInput("resume cursor beyond the end of the search space");
  }
  std::uint64_t end = total;
  if (params.budget > 0 && params.budget < total - params.start_cursor) {
    end = params.start_cursor + params.budget;
  }
  return {params.start_cursor, end};
}

void absorb(SearchReport& r, Partial&& part, std::uint64_t start, std::uint64_t end) {
  r.start_cursor = start;
  r.cursor = end;
  r.minimum = part.minimum;
  r.histogram = std::move(part.histogram);
  r.witnesses = std::move(part.witnesses);
  r.witness_total = part.witness_total;
  r.evaluated = part.evaluated;
  r.skipped = part.skipped;
  r.verified = part.verified;
}

std::size_t subset_budget_check(std::size_t n, unsigned max_size) {
  // Number of subsets of size <= max_size, refusing before materializing.
  long double total = 0;
  long double c = 1;
  for (std::size_t k = 1; k <= std::min<std::size_t>(max_size, n); ++k) {
    c = c * static_cast<long double>(n - k + 1) / static_cast<long double>(k);
    total += c;
  }
  if (total > 5e7L) {
    throw BudgetExceeded("too many subsets to enumerate (" + std::to_string(static_cast<double>(total)) + ")");
  }
  return static_cast<std::size_t>(total + 0.5L);
}

}  // namespace

SearchReport up_search(const GgsGroup& G, const SearchParams& params, const Ball* given) {
  Ball local;
  const Ball& arena = resolve_arena(G, params, given, local);
  auto report = make_report(SearchKind::unique_product, G, params, arena);
  std::size_t const n = arena.elements.size();

  std::vector<std::vector<std::size_t>> subsets;
  std::uint64_t total = 0;
  if (params.mode == SearchMode::exhaustive) {
    subset_budget_check(n, params.max_subset_size);
    subsets = enumerate_subsets(n, params.max_subset_size);
    total = checked_square(subsets.size());
  } else {
    total = n == 0 ? 0 : params.samples;
  }
  report.total_items = total;

  // Class id of every product of two arena elements.
  ElementIndex products(G);
  std::vector<std::size_t> product_class(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      product_class[i * n + j] = products.insert(mul(arena.elements[i], arena.elements[j], G)).first;
    }
  }

  auto count_unique = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> ids;
    ids.reserve(a.size() * b.size());
    for (auto i : a) {
      for (auto j : b) {
        ids.push_back(product_class[i * n + j]);
      }
    }
    std::sort(ids.begin(), ids.end());
    std::size_t unique = 0;
    for (std::size_t k = 0; k < ids.size();) {
      std::size_t l = k;
      while (l < ids.size() && ids[l] == ids[k]) {
        ++l;
      }
      unique += (l - k == 1) ? 1 : 0;
      k = l;
    }
    return unique;
  };

  auto eval = [&](std::uint64_t t) -> std::optional<Item> {
    Item item;
    if (params.mode == SearchMode::exhaustive) {
      item.a = subsets[t / subsets.size()];
      item.b = subsets[t % subsets.size()];
    } else {
      std::mt19937_64 rng(splitmix64(params.seed ^ splitmix64(t)));
      for (int attempt = 0; attempt < 64; ++attempt) {
        item.a = random_subset(rng, n, params.max_subset_size);
        item.b = random_subset(rng, n, params.max_subset_size);
        if (item.a.size() * item.b.size() >= 2) {
          break;
        }
      }
    }
    if (item.a.size() * item.b.size() < 2) {
      return std::nullopt;
    }
    item.count = count_unique(item.a, item.b);
    return item;
  };
  auto recount = [&](const Item& item) {
    return up_count_pairwise(pick(arena, item.a), pick(arena, item.b), G);
  };

  auto const [start, end] = item_range(params, total);
  absorb(report, run_items(start, end, params.workers, params.witness_limit, 1, params.verify_all, eval, recount),
         start, end);

  for (auto& w : report.witnesses) {
    auto const A = pick(arena, w.a);
    auto const B = pick(arena, w.b);
    w.recomputed = up_count_pairwise(A, B, G);
    if (w.recomputed != w.count) {
      throw InvariantViolation("witness at item " + std::to_string(w.cursor) + " failed re-verification");
    }
    for (auto const& u : unique_products(A, B, G)) {
      w.transcript.push_back("(" + to_string(A[u.i]) + ")*(" + to_string(B[u.j]) + ") = " + to_string(u.product));
    }
  }
  return report;
}

SearchReport diffuse_search(const GgsGroup& G, const SearchParams& params, const Ball* given) {
  Ball local;
  const Ball& arena = resolve_arena(G, params, given, local);
  auto report = make_report(SearchKind::diffuse, G, params, arena);
  std::size_t const n = arena.elements.size();

  std::vector<std::vector<std::size_t>> subsets;
  std::uint64_t total = 0;
  if (params.mode == SearchMode::exhaustive) {
    subset_budget_check(n, params.max_subset_size);
    subsets = enumerate_subsets(n, params.max_subset_size);
    total = subsets.size();
  } else {
    total = n == 0 ? 0 : params.samples;
  }
  report.total_items = total;

  // twist[i n + j] = arena index of x_i x_j^-1 x_i, or -1 outside the arena.
  ElementIndex index(G);
  for (auto const& w : arena.elements) {
    index.insert(w);
  }
  std::vector<std::ptrdiff_t> twist(n * n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        continue;
      }
      std::array<Word, 3> const f{arena.elements[i], inv(arena.elements[j], G), arena.elements[i]};
      if (auto id = index.find(reduce_concat(f, G.degree()))) {
        twist[i * n + j] = static_cast<std::ptrdiff_t>(*id);
      }
    }
  }

  auto eval = [&](std::uint64_t t) -> std::optional<Item> {
    Item item;
    if (params.mode == SearchMode::exhaustive) {
      item.a = subsets[t];
    } else {
      std::mt19937_64 rng(splitmix64(params.seed ^ splitmix64(t)));
      item.a = random_subset(rng, n, params.max_subset_size);
    }
    for (auto i : item.a) {
      bool extremal = true;
      for (auto j : item.a) {
        if (j != i && twist[i * n + j] >= 0 &&
            std::binary_search(item.a.begin(), item.a.end(), static_cast<std::size_t>(twist[i * n + j]))) {
          extremal = false;
          break;
        }
      }
      item.count += extremal ? 1 : 0;
    }
    return item;
  };
  auto recount = [&](const Item& item) { return extremal_count_pairwise(pick(arena, item.a), G); };

  auto const [start, end] = item_range(params, total);
  absorb(report, run_items(start, end, params.workers, params.witness_limit, 0, params.verify_all, eval, recount),
         start, end);

  for (auto& w : report.witnesses) {
    auto const A = pick(arena, w.a);
    w.recomputed = extremal_count_pairwise(A, G);
    if (w.recomputed != w.count) {
      throw InvariantViolation("witness at item " + std::to_string(w.cursor) + " failed re-verification");
    }
    for (std::size_t i = 0; i < A.size(); ++i) {
      auto const j = nonextremal_partner(A, i, G);
      Word const s = mul(inv(A[i], G), A[*j], G);
      w.transcript.push_back("a=(" + to_string(A[i]) + ") s=(" + to_string(s) + ") as=(" + to_string(A[*j]) +
                             ") as^-1=(" + to_string(mul(A[i], inv(s, G), G)) + ")");
    }
  }
  return report;
}

SearchReport merge_reports(const SearchReport& earlier, const SearchReport& later,
                           std::size_t witness_limit) {
  if (earlier.kind != later.kind || earlier.vector != later.vector || earlier.arena != later.arena ||
      earlier.radius != later.radius || earlier.max_subset_size != later.max_subset_size ||
      earlier.mode != later.mode || earlier.seed != later.seed || earlier.samples != later.samples ||
      earlier.total_items != later.total_items) {
    throw InvalidInput("cannot merge reports of different searches");
  }
  if (later.start_cursor != earlier.cursor) {
    throw InvalidInput("cannot merge non-contiguous reports");
  }
  SearchReport r = earlier;
  r.cursor = later.cursor;
  r.evaluated += later.evaluated;
  r.skipped += later.skipped;
  r.verified += later.verified;
  if (later.minimum) {
    r.minimum = r.minimum ? std::min(*r.minimum, *later.minimum) : later.minimum;
  }
  for (auto const& [k, v] : later.histogram) {
    r.histogram[k] += v;
  }
  for (auto const& w : later.witnesses) {
    if (r.witnesses.size() < witness_limit) {
      r.witnesses.push_back(w);
    }
  }
  r.witness_total += later.witness_total;
  return r;
}

}  // namespace branchlab

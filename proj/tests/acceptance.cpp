// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Optional argv[1]: path of the branchlab CLI, used for the determinism check.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "branchlab/element.hpp"
#include "branchlab/ggs.hpp"
#include "branchlab/quotient.hpp"
#include "branchlab/report.hpp"
#include "branchlab/search.hpp"
#include "brute.hpp"
#include "oracles.hpp"

using namespace branchlab;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Records the first failure, keeps the detail short.
class Check {
 public:
  void expect(bool cond, const std::string& what) {
    if (!cond && ok_) {
      ok_ = false;
      failure_ = what;
    }
  }
  bool ok() const { return ok_; }
  const std::string& failure() const { return failure_; }

 private:
  bool ok_ = true;
  std::string failure_;
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<Outcome()>& body) {
  auto const t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_seconds) {
    out.ok = false;
    out.detail += " [over the " + std::to_string(static_cast<int>(limit_seconds)) + " s target]";
  }
  failures += out.ok ? 0 : 1;
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.2fs", secs);
  std::cout << (out.ok ? "PASS" : "FAIL") << "  criterion " << id << ": " << title << " (" << timing << ") -- "
            << out.detail << std::endl;
}

const std::vector<GgsVector> kInstances = {{3, {1, 0}}, {3, {1, 2}}, {5, {1, 1, 1, 3}}};

oracle::Letters random_vertex(std::mt19937_64& rng, unsigned p, unsigned depth) {
  oracle::Letters v(depth);
  for (auto& x : v) {
    x = static_cast<std::uint8_t>(rng() % p);
  }
  return v;
}

Vertex to_vertex(const oracle::Letters& v) { return Vertex{v}; }

Outcome group_axioms() {
  Check c;
  std::size_t vertex_checks = 0;
  for (auto const& v : kInstances) {
    GgsGroup const G(v);
    std::mt19937_64 rng(1000 + v.p + v.e.back());
    unsigned const full_depth = v.p == 3 ? 6 : 4;
    for (int trial = 0; trial < 1000 && c.ok(); ++trial) {
      auto const g = oracle::random_word(rng, 10, v.p);
      auto const h = oracle::random_word(rng, 10, v.p);
      auto const k = oracle::random_word(rng, 6, v.p);
      auto const gh = mul(g, h, G);
      auto const gi = inv(g, G);
      std::string const tag = to_string(v) + " g=" + to_string(g) + " h=" + to_string(h);

      c.expect(is_identity(mul(g, gi, G), G) && is_identity(mul(gi, g, G), G), "inverse: " + tag);
      c.expect(equal(mul(gh, k, G), mul(g, mul(h, k, G), G), G), "associativity: " + tag);

      // Whole-level action against the oracle, and (gh)(v) = g(h(v)).
      if (trial % 10 == 0) {
        auto const lg = level_action(g, full_depth, G);
        auto const lh = level_action(h, full_depth, G);
        auto const lgh = level_action(gh, full_depth, G);
        c.expect(lgh == oracle::compose(lg, lh), "level composition: " + tag);
        c.expect(lgh == oracle::level_images(gh, full_depth, v), "level action vs oracle: " + tag);
        vertex_checks += lgh.size();
      }
      for (int s = 0; s < 12; ++s) {
        auto const depth = static_cast<unsigned>(1 + rng() % 6);
        auto const x = random_vertex(rng, v.p, depth);
        auto const hx = act(h, to_vertex(x), G);
        auto const ghx = act(gh, to_vertex(x), G);
        c.expect(ghx == act(g, hx, G), "action compatibility: " + tag);
        c.expect(ghx.letters == oracle::act(gh, x, v), "action vs oracle: " + tag);
        c.expect(act(gi, act(g, to_vertex(x), G), G) == to_vertex(x), "inverse action: " + tag);
        ++vertex_checks;
      }
    }
  }
  if (!c.ok()) {
    return {false, c.failure()};
  }
  return {true, "3 instances x 1000 pairs; " + std::to_string(vertex_checks) +
                    " vertex images checked against the oracle, depth <= 6"};
}

Outcome relations() {
  std::ostringstream os;
  bool ok = true;
  for (auto const& v : kInstances) {
    GgsGroup const G(v);
    auto const r = verify_generator_relations(G);
    ok = ok && r.ok();
    os << to_string(v) << ": a^p " << (r.a_holds ? "ok" : "FAILS") << " [" << r.a_states << " states], b^p "
       << (r.b_holds ? "ok" : "FAILS") << " [" << r.b_states << " states]; ";
  }
  return {ok, os.str()};
}

struct LevelPlan {
  GgsVector v;
  unsigned max_level;
};
const std::vector<LevelPlan> kLevels = {{{3, {1, 0}}, 5}, {{3, {1, 2}}, 5}, {{5, {1, 1, 1, 3}}, 4}};

std::vector<oracle::Images> oracle_generators(const GgsGroup& G, unsigned n) {
  return {oracle::level_images(G.a(), n, G.vector()), oracle::level_images(G.b(), n, G.vector())};
}

Outcome p_power_orders() {
  Check c;
  std::ostringstream os;
  int oracle_matches = 0;
  for (auto const& plan : kLevels) {
    GgsGroup const G(plan.v);
    os << to_string(plan.v) << ":";
    for (unsigned n = 1; n <= plan.max_level; ++n) {
      auto const order = group_order(quotient_group(G, n));
      auto const cert = certify_p_power(order, plan.v.p);
      c.expect(cert.ok, to_string(plan.v) + " n=" + std::to_string(n) + " order " + to_decimal(order) +
                            " has factor " + to_decimal(cert.offending_factor));
      os << " " << plan.v.p << "^" << cert.exponent;
      auto const d = oracle::level_size(plan.v.p, n);
      if (d <= 27) {
        auto const naive = oracle::closure(oracle_generators(G, n), d).size();
        c.expect(BigInt(naive) == order, "naive closure disagrees at " + to_string(plan.v) + " n=" + std::to_string(n));
        ++oracle_matches;
      }
    }
    os << "; ";
  }
  os << oracle_matches << " levels matched the naive closure exactly";
  return {c.ok(), c.ok() ? os.str() : c.failure()};
}

Outcome first_level_and_transitivity() {
  Check c;
  int levels = 0;
  for (auto const& plan : kLevels) {
    GgsGroup const G(plan.v);
    c.expect(group_order(quotient_group(G, 1)) == plan.v.p, "|G_1| != p for " + to_string(plan.v));
    for (unsigned n = 1; n <= plan.max_level; ++n) {
      c.expect(is_transitive_on_level(G, n), "not transitive: " + to_string(plan.v) + " n=" + std::to_string(n));
      c.expect(quotient_group(G, n).is_transitive(), "chain orbit disagrees at n=" + std::to_string(n));
      ++levels;
    }
  }
  return {c.ok(), c.ok() ? "|G_1| = p for all 3 instances; transitive on " + std::to_string(levels) + " levels"
                         : c.failure()};
}

Outcome abelianization() {
  Check c;
  std::ostringstream os;
  int levels = 0;
  for (auto const& plan : kLevels) {
    GgsGroup const G(plan.v);
    for (unsigned n = 2; n <= plan.max_level; ++n) {
      auto const P = quotient_group(G, n);
      auto const ab = abelian_quotient_order(P, plan.v.p);
      std::string const tag = to_string(plan.v) + " n=" + std::to_string(n);
      c.expect(ab.order == plan.v.p * plan.v.p, tag + ": abelianization " + to_decimal(ab.order));
      c.expect(ab.elementary, tag + ": not elementary abelian");
      ++levels;
      auto const d = oracle::level_size(plan.v.p, n);
      if (d <= 27) {
        auto const gens = oracle_generators(G, n);
        auto const all = oracle::closure(gens, d);
        auto const derived = oracle::derived(all, gens, d);
        c.expect(BigInt(all.size()) == BigInt(derived.size()) * plan.v.p * plan.v.p, tag + ": oracle disagrees");
      }
    }
    // theta(g) = 0 exactly when g maps into [G_3, G_3].
    auto const D = derived_subgroup(quotient_group(G, 3));
    std::mt19937_64 rng(77 + plan.v.p);
    for (int trial = 0; trial < 200; ++trial) {
      auto const g = oracle::random_word(rng, 10, plan.v.p);
      c.expect(in_derived_kernel(g, G) == membership(D, leaf_permutation(g, 3, G).perm),
               "theta kernel and [G_3, G_3] disagree on " + to_string(g));
    }
  }
  os << "|G_n / [G_n, G_n]| = p^2, elementary, on " << levels
     << " levels (n >= 2); theta kernel matches [G_3, G_3] on 600 random words";
  return {c.ok(), c.ok() ? os.str() : c.failure()};
}

Outcome torsion_dichotomy() {
  Check c;
  GgsGroup const gs(GgsVector{3, {1, 2}});
  std::mt19937_64 rng(606);
  std::uint64_t max_order = 0;
  for (int trial = 0; trial < 100; ++trial) {
    auto const g = oracle::random_word(rng, 14, 3);
    auto const r = order_up_to(g, 243, gs);
    c.expect(r.finite(), "Gupta-Sidki word " + to_string(g) + " has no order <= 243");
    if (r.finite()) {
      c.expect(is_identity(power(g, *r.order, gs), gs), "reported order is wrong for " + to_string(g));
      max_order = std::max(max_order, *r.order);
    }
  }
  GgsGroup const fg(family_vector(3, 0, true).vector);
  int tested = 0;
  while (tested < 100) {
    auto const g = oracle::random_word(rng, 14, 3);
    auto const t = theta(g, fg);
    auto const k = mul(g, mul(generator_power(Generator::a, (3 - t.a_exp) % 3, 3),
                              generator_power(Generator::b, (3 - t.b_exp) % 3, 3), fg), fg);
    if (!in_derived_kernel(k, fg) || is_identity(k, fg)) {
      continue;
    }
    ++tested;
    c.expect(!order_up_to(k, 81, fg).finite(), "Fabrykowski-Gupta kernel element " + to_string(k) + " has order <= 81");
  }
  return {c.ok(), c.ok() ? "100 Gupta-Sidki words of order <= 243 (max " + std::to_string(max_order) +
                               "); 100 nontrivial Fabrykowski-Gupta kernel elements of order > 81"
                         : c.failure()};
}

Outcome non_diffuse_witness() {
  GgsGroup const G(GgsVector{3, {1, 0}});
  SearchParams params;
  params.arena = Arena::full;
  params.radius = 1;
  params.max_subset_size = 3;
  auto const r = diffuse_search(G, params);
  FiniteSubset const target{Word{}, G.a(), power(G.a(), 2, G)};
  auto const candidates = ball(G, 2, Arena::full).elements;
  for (auto const& w : r.witnesses) {
    FiniteSubset A;
    for (auto i : w.a) {
      A.push_back(r.arena_elements[i]);
    }
    bool const same = A.size() == 3 && std::all_of(target.begin(), target.end(),
                                                   [&](const Word& x) { return brute::member(x, A, G); });
    if (same && w.count == 0) {
      auto const recount = brute::extremal_count(A, candidates, G);
      return {recount == 0, "{1, a, a^2} found with 0 extremal elements; definition-level recount " +
                                std::to_string(recount) + "; " + std::to_string(r.witness_total) + " witnesses total"};
    }
  }
  return {false, "{1, a, a^2} not among the witnesses"};
}

struct UpRun {
  SearchReport report;
  std::uint64_t recounted = 0;
  bool recounts_agree = true;
  bool histogram_agrees = true;
};

// Exhaustive run with every item recounted pairwise by the search, then a
// second recount of every pair through product_table().
UpRun kernel_up_run(const GgsGroup& G, unsigned radius) {
  SearchParams params;
  params.arena = Arena::kernel;
  params.radius = radius;
  params.max_subset_size = 2;
  params.verify_all = true;
  UpRun run{up_search(G, params)};
  auto const subsets = enumerate_subsets(run.report.arena_elements.size(), 2);
  std::map<std::size_t, std::uint64_t> histogram;
  for (auto const& ia : subsets) {
    for (auto const& ib : subsets) {
      if (ia.size() * ib.size() < 2) {
        continue;
      }
      FiniteSubset A, B;
      for (auto i : ia) {
        A.push_back(run.report.arena_elements[i]);
      }
      for (auto j : ib) {
        B.push_back(run.report.arena_elements[j]);
      }
      std::size_t unique = 0;
      for (auto const& cls : product_table(A, B, G).classes) {
        unique += cls.pairs.size() == 1 ? 1 : 0;
      }
      ++histogram[unique];
      ++run.recounted;
    }
  }
  run.histogram_agrees = histogram == run.report.histogram;
  for (auto const& w : run.report.witnesses) {
    run.recounts_agree = run.recounts_agree && w.recomputed == w.count;
  }
  return run;
}

std::string describe(const UpRun& run) {
  std::ostringstream os;
  auto const& r = run.report;
  os << "radius " << r.radius << ": " << r.arena_elements.size() << " kernel elements, " << r.evaluated
     << " pairs evaluated, " << r.skipped << " skipped (|A||B| < 2), " << r.verified << " recounted pairwise, "
     << run.recounted << " recounted from product tables, minimum "
     << (r.minimum ? std::to_string(*r.minimum) : std::string("undefined (no evaluable pair)"));
  if (r.below_two()) {
    os << " !!! SOME PAIR HAS FEWER THAN TWO UNIQUE PRODUCTS !!!";
  }
  return os.str();
}

Outcome question_two_run() {
  GgsGroup const G(family_vector(3, 0, true).vector);
  // At radius 3 the kernel ball is {1}: a nontrivial kernel element needs two
  // syllables of each generator. Radius 6 is run as well so the evidence is
  // not vacuous.
  auto const r3 = kernel_up_run(G, 3);
  auto const r6 = kernel_up_run(G, 6);
  bool const ok = r3.report.complete() && r6.report.complete() && r3.histogram_agrees && r6.histogram_agrees &&
                  r3.recounts_agree && r6.recounts_agree && r3.report.verified == r3.report.evaluated &&
                  r6.report.verified == r6.report.evaluated && r6.recounted == r6.report.evaluated &&
                  r6.report.minimum.has_value();
  return {ok, describe(r3) + "; " + describe(r6)};
}

std::string payload_of(const std::filesystem::path& file) {
  std::ifstream in(file);
  return json::parse(in).at("payload").dump();
}

Outcome determinism(const std::string& cli) {
  Check c;
  GgsGroup const G(GgsVector{3, {1, 0}});
  int comparisons = 0;
  for (auto mode : {SearchMode::exhaustive, SearchMode::random}) {
    for (bool up : {true, false}) {
      SearchParams params;
      params.arena = Arena::full;
      params.radius = 2;
      params.max_subset_size = mode == SearchMode::random ? 3 : 2;
      params.mode = mode;
      params.seed = 20240611;
      params.samples = 2000;
      std::string first;
      for (unsigned workers : {1U, 2U, 4U, 1U}) {
        params.workers = workers;
        auto const r = up ? up_search(G, params) : diffuse_search(G, params);
        auto const text = to_json(r).dump();
        if (first.empty()) {
          first = text;
        } else {
          c.expect(text == first, "library search differs with " + std::to_string(workers) + " workers");
          ++comparisons;
        }
      }
    }
  }
  c.expect(to_json(quotient_report(G, 4)).dump() == to_json(quotient_report(G, 4)).dump(), "quotient report");
  ++comparisons;

  if (cli.empty()) {
    return {c.ok(), c.ok() ? std::to_string(comparisons) + " library reruns byte-identical (CLI not given)"
                           : c.failure()};
  }
  auto const dir = std::filesystem::temp_directory_path() / ("branchlab-acceptance-" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  std::vector<std::string> const commands = {
      "group-info --p 5 --e 1,1,1,3",
      "element --word 'a1 b2 a1 b1' --order 100",
      "element --word 'a1 b2' --act 0212",
      "element --word 'a1 b2 a2 b1' --portrait 4",
      "quotients --p 3 --e 1,2 --level 4",
      "search up --arena full --radius 2 --max-size 2",
      "search diffuse --arena kernel --radius 6 --max-size 3",
      "search up --arena full --radius 3 --max-size 2 --mode random --seed 9 --samples 3000",
  };
  int run_id = 0;
  for (auto const& cmd : commands) {
    std::string first;
    auto const workers_list = cmd.rfind("search", 0) == 0 ? std::vector<int>{1, 3, 1} : std::vector<int>{0, 0};
    for (int workers : workers_list) {
      auto const out = dir / ("run" + std::to_string(run_id++) + ".json");
      std::string line = "'" + cli + "' " + cmd + (workers ? " --workers " + std::to_string(workers) : "") +
                         " --out '" + out.string() + "'";
      int const rc = std::system(line.c_str());
      c.expect(rc == 0, "CLI exit status " + std::to_string(rc) + " for: " + cmd);
      if (rc != 0) {
        break;
      }
      auto const payload = payload_of(out);
      if (first.empty()) {
        first = payload;
      } else {
        c.expect(payload == first, "CLI payload differs for: " + cmd);
        ++comparisons;
      }
    }
  }
  std::filesystem::remove_all(dir);
  return {c.ok(), c.ok() ? std::to_string(comparisons) +
                               " reruns byte-identical (library searches and CLI commands, 1-4 workers)"
                         : c.failure()};
}

Outcome extremal_oracle() {
  Check c;
  int subsets = 0;
  int non_extremal_seen = 0;
  for (auto const& v : std::vector<GgsVector>{{3, {1, 0}}, {3, {1, 2}}}) {
    GgsGroup const G(v);
    auto const pool = ball(G, 2, Arena::full).elements;
    // Every a^-1 a' with a, a' in the radius-2 ball lies in the radius-4 ball.
    auto const candidates = ball(G, 4, Arena::full).elements;
    std::mt19937_64 rng(1010 + v.e.back());
    for (int trial = 0; trial < 250; ++trial) {
      std::vector<std::size_t> idx(pool.size());
      for (std::size_t i = 0; i < idx.size(); ++i) {
        idx[i] = i;
      }
      std::shuffle(idx.begin(), idx.end(), rng);
      FiniteSubset A;
      for (std::size_t i = 0; i < 1 + rng() % 6; ++i) {
        A.push_back(pool[idx[i]]);
      }
      auto const fast = extremal_elements(A, G).size();
      auto const slow = brute::extremal_count(A, candidates, G);
      c.expect(fast == slow, "disagreement on a subset of size " + std::to_string(A.size()));
      non_extremal_seen += fast < A.size() ? 1 : 0;
      ++subsets;
    }
  }
  return {c.ok(), c.ok() ? std::to_string(subsets) + " random subsets agree with the brute force over s; " +
                               std::to_string(non_extremal_seen) + " of them had non-extremal elements"
                         : c.failure()};
}

}  // namespace

int main(int argc, char** argv) {
  std::string const cli = argc > 1 ? argv[1] : "";
  std::cout << "branchlab acceptance" << std::endl;
  criterion(1, "group axioms", 60, group_axioms);
  criterion(2, "generator relations", 5, relations);
  criterion(3, "quotient orders are powers of p", 600, p_power_orders);
  criterion(4, "|G_1| = p and spherical transitivity", 60, first_level_and_transitivity);
  criterion(5, "abelianization of the quotients", 300, abelianization);
  criterion(6, "torsion dichotomy", 600, torsion_dichotomy);
  criterion(7, "non-diffuse torsion witness", 1, non_diffuse_witness);
  criterion(8, "unique products on the theta-kernel ball", 1800, question_two_run);
  criterion(9, "determinism", 300, [&] { return determinism(cli); });
  criterion(10, "extremal elements against brute force", 60, extremal_oracle);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}

// branchlab: command-line front end.
//
// Every subcommand is first turned into a run config (plain JSON), which is
// then executed; the config is echoed in the output envelope, and
// `branchlab --config <envelope or config>` replays it.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "branchlab/ball_cache.hpp"
#include "branchlab/element.hpp"
#include "branchlab/error.hpp"
#include "branchlab/ggs.hpp"
#include "branchlab/quotient.hpp"
#include "branchlab/report.hpp"
#include "branchlab/search.hpp"

using namespace branchlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitBudget = 3;
constexpr int kExitInvariant = 4;

std::vector<unsigned> parse_vector(const std::string& text) {
  std::vector<unsigned> e;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      long const v = std::stol(item, &used);
      if (used != item.size() || v < 0) {
        throw InvalidInput("");
      }
      e.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw InvalidInput("bad vector entry '" + item + "' in --e");
    }
  }
  return e;
}

// (1, ..., 1, lambda) with lambda not 1 or 2 mod p.
bool theorem_compliant(const GgsVector& v) {
  if (v.p < 3 || v.e.empty()) {
    return false;
  }
  for (std::size_t i = 0; i + 1 < v.e.size(); ++i) {
    if (v.e[i] != 1) {
      return false;
    }
  }
  return v.e.back() != 1 && v.e.back() != 2;
}

struct Flags {
  unsigned p = 3;
  std::string e = "1,0";
  bool require_compliant = false;
  std::size_t budget_states = EngineOptions{}.state_budget;
  std::string out;
  bool no_timing = false;
};

json group_config(const Flags& f) {
  return {{"p", f.p}, {"e", parse_vector(f.e)}, {"theoremCompliant", f.require_compliant}};
}

json base_config(const std::string& command, const Flags& f) {
  return {{"command", command},
          {"group", group_config(f)},
          {"budgets", {{"states", f.budget_states}}},
          {"output", {{"out", f.out}, {"timing", !f.no_timing}}}};
}

GgsGroup group_from(const json& config) {
  auto const& g = config.at("group");
  EngineOptions options;
  options.state_budget = config.at("budgets").at("states").get<std::size_t>();
  auto G = define_ggs(g.at("p").get<unsigned>(), g.at("e").get<std::vector<unsigned>>(), options);
  if (g.value("theoremCompliant", false) && !theorem_compliant(G.vector())) {
    throw InvalidInput(to_string(G.vector()) + " is not of the form (1,...,1,lambda) with lambda != 1, 2");
  }
  return G;
}

struct Outcome {
  json payload;
  int exit_code = kExitOk;
};

Outcome run_group_info(const json&, const GgsGroup& G) {
  json payload{{"group", to_json(G.vector())},
               {"theoremCompliant", theorem_compliant(G.vector())},
               {"relations", to_json(verify_generator_relations(G))}};
  return {payload};
}

Outcome run_element(const json& config, const GgsGroup& G) {
  auto const& c = config.at("element");
  auto const word = parse_word(c.at("word").get<std::string>(), G.degree());
  auto const query = c.at("query").get<std::string>();
  json payload{{"word", to_string(word)}, {"query", query}};
  if (query == "act") {
    auto const v = parse_vertex(c.at("vertex").get<std::string>(), G.degree());
    payload["vertex"] = to_string(v);
    payload["image"] = to_string(act(word, v, G));
  } else if (query == "order") {
    auto const bound = c.at("bound").get<std::uint64_t>();
    auto const r = order_up_to(word, bound, G);
    payload["bound"] = bound;
    payload["order"] = r.order ? json(*r.order) : json(nullptr);
    payload["exceedsBound"] = !r.finite();
  } else if (query == "equal") {
    auto const other = parse_word(c.at("other").get<std::string>(), G.degree());
    payload["other"] = to_string(other);
    payload["equal"] = equal(word, other, G);
  } else if (query == "portrait") {
    auto const depth = c.at("depth").get<unsigned>();
    payload["depth"] = depth;
    payload["portrait"] = canonical_key(word, depth, G);
  } else {
    throw InvalidInput("unknown element query '" + query + "'");
  }
  return {payload};
}

Outcome run_quotients(const json& config, const GgsGroup& G) {
  auto const& c = config.at("quotients");
  auto const max_level = c.at("maxLevel").get<unsigned>();
  auto const degree = config.at("budgets").at("degree").get<std::size_t>();
  if (max_level == 0) {
    throw InvalidInput("--level must be at least 1");
  }
  Outcome out;
  out.payload = {{"group", to_json(G.vector())}, {"levels", json::array()}, {"truncated", false}};
  for (unsigned n = 1; n <= max_level; ++n) {
    try {
      out.payload["levels"].push_back(to_json(quotient_report(G, n, degree)));
    } catch (const BudgetExceeded& e) {
      out.payload["truncated"] = true;
      out.payload["truncatedAtLevel"] = n;
      out.payload["reason"] = e.what();
      out.exit_code = kExitBudget;
      break;
    }
  }
  return out;
}

Outcome run_search(const json& config, const GgsGroup& G) {
  auto const& c = config.at("search");
  auto const kind = c.at("kind").get<std::string>();
  SearchParams params;
  params.arena = parse_arena(c.at("arena").get<std::string>());
  params.radius = c.at("radius").get<unsigned>();
  params.max_subset_size = c.at("maxSubsetSize").get<unsigned>();
  params.mode = parse_mode(c.at("mode").get<std::string>());
  params.seed = c.at("seed").get<std::uint64_t>();
  params.samples = c.at("samples").get<std::uint64_t>();
  params.budget = config.at("budgets").at("items").get<std::uint64_t>();
  params.element_budget = config.at("budgets").at("elements").get<std::size_t>();
  params.workers = c.at("workers").get<unsigned>();
  params.witness_limit = c.at("witnessLimit").get<std::size_t>();
  params.verify_all = c.at("verifyAll").get<bool>();
  if (params.max_subset_size == 0) {
    throw InvalidInput("--max-size must be at least 1");
  }

  std::optional<SearchReport> previous;
  auto const resume = config.at("output").value("resume", std::string{});
  if (!resume.empty()) {
    std::ifstream in(resume);
    if (!in) {
      throw InvalidInput("cannot read resume file " + resume);
    }
    json prev;
    try {
      prev = json::parse(in);
    } catch (const json::exception& e) {
      throw InvalidInput("resume file " + resume + " is not JSON: " + e.what());
    }
    previous = search_report_from_json(prev.contains("payload") ? prev.at("payload") : prev);
    params.start_cursor = previous->cursor;
  }

  auto const cache_dir = config.at("output").value("cacheDir", std::string{});
  std::optional<Ball> arena;
  if (!cache_dir.empty()) {
    arena = cached_ball(cache_dir, G, params.radius, params.arena, params.element_budget);
  }
  Ball const* arena_ptr = arena ? &*arena : nullptr;

  SearchReport report = kind == "up" ? up_search(G, params, arena_ptr) : diffuse_search(G, params, arena_ptr);
  if (previous) {
    report = merge_reports(*previous, report, params.witness_limit);
  }

  auto const csv = config.at("output").value("csv", std::string{});
  if (!csv.empty()) {
    std::ofstream f(csv);
    f << histogram_csv(report);
    if (!f) {
      throw InvalidInput("cannot write " + csv);
    }
  }
  Outcome out{to_json(report)};
  out.exit_code = report.complete() ? kExitOk : kExitBudget;
  return out;
}

Outcome execute(const json& config) {
  auto const command = config.at("command").get<std::string>();
  auto const G = group_from(config);
  if (command == "group-info") {
    return run_group_info(config, G);
  }
  if (command == "element") {
    return run_element(config, G);
  }
  if (command == "quotients") {
    return run_quotients(config, G);
  }
  if (command == "search") {
    return run_search(config, G);
  }
  throw InvalidInput("unknown command '" + command + "'");
}

int emit(const json& config, const std::function<Outcome()>& body) {
  auto const t0 = std::chrono::steady_clock::now();
  Outcome out = body();
  double const seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json envelope{{"tool", "branchlab"},
                {"version", BRANCHLAB_VERSION},
                {"command", config.at("command")},
                {"config", config},
                {"timing", nullptr},
                {"exitCode", out.exit_code},
                {"payload", out.payload}};
  if (config.at("output").value("timing", true)) {
    envelope["timing"] = {{"seconds", seconds}};
  }
  auto const path = config.at("output").value("out", std::string{});
  if (path.empty()) {
    std::cout << envelope.dump(2) << "\n";
  } else {
    std::ofstream f(path);
    f << envelope.dump(2) << "\n";
    if (!f) {
      throw InvalidInput("cannot write " + path);
    }
  }
  return out.exit_code;
}

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidInput("cannot read config " + path);
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput("config " + path + " is not JSON: " + e.what());
  }
  return j.contains("config") ? j.at("config") : j;
}

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--p", f.p, "prime degree of the tree")->capture_default_str();
  cmd->add_option("--e", f.e, "defining vector, comma separated")->capture_default_str();
  cmd->add_flag("--theorem-compliant", f.require_compliant,
                "reject vectors not of the form (1,...,1,lambda), lambda != 1, 2");
  cmd->add_option("--budget-states", f.budget_states, "section-closure state cap per identity test")
      ->capture_default_str();
  cmd->add_option("--out", f.out, "write the envelope here instead of stdout");
  cmd->add_flag("--no-timing", f.no_timing, "leave the timing field null");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"branchlab: GGS groups, congruence quotients and unique-product searches"};
  app.require_subcommand(0, 1);
  std::string config_path;
  std::optional<std::string> replay_out;
  app.add_option("--config", config_path, "replay a run config or a previous envelope");
  app.add_option("--out", replay_out, "with --config: write the envelope here (empty = stdout)");
  app.set_version_flag("--version", BRANCHLAB_VERSION);

  Flags flags;

  auto* info = app.add_subcommand("group-info", "validate a group and check a^p = b^p = 1");
  add_common(info, flags);

  auto* element = app.add_subcommand("element", "queries on one element");
  add_common(element, flags);
  std::string word, vertex, other;
  std::optional<std::uint64_t> order_bound;
  std::optional<unsigned> portrait_depth;
  element->add_option("--word", word, "word text form, e.g. \"a1 b2\"")->required();
  auto* act_opt = element->add_option("--act", vertex, "image of a vertex, e.g. 021");
  auto* order_opt = element->add_option("--order", order_bound, "smallest k <= bound with g^k = 1");
  auto* equal_opt = element->add_option("--equal", other, "compare with another word");
  auto* portrait_opt = element->add_option("--portrait", portrait_depth, "portrait to this depth");
  act_opt->excludes(order_opt)->excludes(equal_opt)->excludes(portrait_opt);
  order_opt->excludes(equal_opt)->excludes(portrait_opt);
  equal_opt->excludes(portrait_opt);

  auto* quotients = app.add_subcommand("quotients", "sweep the congruence quotients G_1..G_n");
  add_common(quotients, flags);
  unsigned max_level = 3;
  std::size_t budget_degree = kDefaultDegreeBudget;
  quotients->add_option("--level", max_level, "largest level")->capture_default_str();
  quotients->add_option("--budget-degree", budget_degree, "largest permutation degree p^n")
      ->capture_default_str();

  auto* search = app.add_subcommand("search", "unique-product or diffuseness search over a ball");
  add_common(search, flags);
  std::string kind, arena = "kernel", mode = "exhaustive", csv, cache_dir, resume;
  SearchParams sp;
  sp.radius = 3;
  search->add_option("kind", kind, "up | diffuse")->required()->check(CLI::IsMember({"up", "diffuse"}));
  search->add_option("--arena", arena, "full | kernel")->capture_default_str()->check(
      CLI::IsMember({"full", "kernel"}));
  search->add_option("--radius", sp.radius, "ball radius in syllables")->capture_default_str();
  search->add_option("--max-size", sp.max_subset_size, "largest subset size")->capture_default_str();
  search->add_option("--mode", mode, "exhaustive | random")->capture_default_str()->check(
      CLI::IsMember({"exhaustive", "random"}));
  search->add_option("--seed", sp.seed, "seed for random mode")->capture_default_str();
  search->add_option("--samples", sp.samples, "items drawn in random mode")->capture_default_str();
  search->add_option("--budget-items", sp.budget, "items per run, 0 = unlimited")->capture_default_str();
  search->add_option("--budget-elements", sp.element_budget, "cap on candidate words for the ball")
      ->capture_default_str();
  search->add_option("--workers", sp.workers, "worker threads")->capture_default_str();
  search->add_option("--witness-limit", sp.witness_limit, "witnesses kept in the report")
      ->capture_default_str();
  search->add_flag("--verify-all", sp.verify_all, "recount every item independently");
  search->add_option("--csv", csv, "write the histogram as CSV");
  search->add_option("--cache-dir", cache_dir, "ball cache directory (default $BRANCHLAB_CACHE_DIR)");
  search->add_option("--resume", resume, "previous partial report to continue");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int const code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    json config;
    if (!config_path.empty()) {
      if (app.get_subcommands().size() > 0) {
        throw InvalidInput("--config replays a run; do not combine it with a subcommand");
      }
      config = load_config(config_path);
      if (replay_out) {
        config["output"]["out"] = *replay_out;
      }
    } else if (info->parsed()) {
      config = base_config("group-info", flags);
    } else if (element->parsed()) {
      config = base_config("element", flags);
      json c{{"word", word}};
      if (!act_opt->empty()) {
        c["query"] = "act";
        c["vertex"] = vertex;
      } else if (!order_opt->empty()) {
        c["query"] = "order";
        c["bound"] = *order_bound;
      } else if (!equal_opt->empty()) {
        c["query"] = "equal";
        c["other"] = other;
      } else if (!portrait_opt->empty()) {
        c["query"] = "portrait";
        c["depth"] = *portrait_depth;
      } else {
        throw InvalidInput("element needs one of --act, --order, --equal, --portrait");
      }
      config["element"] = c;
    } else if (quotients->parsed()) {
      config = base_config("quotients", flags);
      config["budgets"]["degree"] = budget_degree;
      config["quotients"] = {{"maxLevel", max_level}};
    } else if (search->parsed()) {
      config = base_config("search", flags);
      if (cache_dir.empty()) {
        if (char const* env = std::getenv("BRANCHLAB_CACHE_DIR")) {
          cache_dir = env;
        }
      }
      config["budgets"]["items"] = sp.budget;
      config["budgets"]["elements"] = sp.element_budget;
      config["search"] = {{"kind", kind},
                          {"arena", arena},
                          {"radius", sp.radius},
                          {"maxSubsetSize", sp.max_subset_size},
                          {"mode", mode},
                          {"seed", sp.seed},
                          {"samples", sp.samples},
                          {"workers", sp.workers},
                          {"witnessLimit", sp.witness_limit},
                          {"verifyAll", sp.verify_all}};
      config["output"]["csv"] = csv;
      config["output"]["cacheDir"] = cache_dir;
      config["output"]["resume"] = resume;
    } else {
      std::cerr << app.help();
      return kExitInvalid;
    }
    return emit(config, [&] { return execute(config); });
  } catch (const InvalidInput& e) {
    std::cerr << "branchlab: invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const json::exception& e) {
    std::cerr << "branchlab: malformed config: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const BudgetExceeded& e) {
    std::cerr << "branchlab: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    std::cerr << "branchlab: invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "branchlab: " << e.what() << "\n";
    return kExitInvariant;
  }
}

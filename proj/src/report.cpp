#include "branchlab/report.hpp"

#include "branchlab/error.hpp"

namespace branchlab {

std::string to_decimal(const BigInt& n) { return n.str(); }

json to_json(const GgsVector& v) { return {{"p", v.p}, {"e", v.e}}; }

json to_json(const RelationReport& r) {
  return {{"aPowerTrivial", r.a_holds},
          {"bPowerTrivial", r.b_holds},
          {"aClosureStates", r.a_states},
          {"bClosureStates", r.b_states}};
}

json to_json(const QuotientReport& r) {
  json j{{"p", r.vector.p},
         {"e", r.vector.e},
         {"n", r.level},
         {"order", to_decimal(r.order)},
         {"pPowerExponent", nullptr},
         {"transitive", r.transitive},
         {"abelianQuotientOrder", to_decimal(r.abelian_quotient_order)},
         {"elementaryAbelian", r.elementary_abelian}};
  if (r.p_power_exponent) {
    j["pPowerExponent"] = *r.p_power_exponent;
  } else {
    j["offendingFactor"] = to_decimal(r.offending_factor);
  }
  return j;
}

namespace {

json words_json(const std::vector<Word>& ws) {
  json out = json::array();
  for (auto const& w : ws) {
    out.push_back(to_string(w));
  }
  return out;
}

}  // namespace

json to_json(const SearchReport& r) {
  json hist = json::object();
  for (auto const& [k, v] : r.histogram) {
    hist[std::to_string(k)] = v;
  }
  json witnesses = json::array();
  for (auto const& w : r.witnesses) {
    json wj{{"cursor", w.cursor}, {"count", w.count}, {"recomputedCount", w.recomputed},
            {"verified", w.count == w.recomputed}, {"transcript", w.transcript}};
    std::vector<Word> a;
    for (auto i : w.a) {
      a.push_back(r.arena_elements.at(i));
    }
    wj["A"] = words_json(a);
    wj["aIndices"] = w.a;
    if (r.kind == SearchKind::unique_product) {
      std::vector<Word> b;
      for (auto i : w.b) {
        b.push_back(r.arena_elements.at(i));
      }
      wj["B"] = words_json(b);
      wj["bIndices"] = w.b;
    }
    witnesses.push_back(std::move(wj));
  }
  json j{{"kind", to_string(r.kind)},
         {"group", to_json(r.vector)},
         {"arena", arena_label(r.arena)},
         {"radius", r.radius},
         {"lengthConvention", "syllable"},
         {"minSubsetSize", 1},
         {"maxSubsetSize", r.max_subset_size},
         {"mode", to_string(r.mode)},
         {"seed", r.seed},
         {"samples", r.samples},
         {"arenaSize", r.arena_elements.size()},
         {"arenaElements", words_json(r.arena_elements)},
         {"keyDepth", r.key_depth},
         {"totalItems", r.total_items},
         {"startCursor", r.start_cursor},
         {"cursor", r.cursor},
         {"complete", r.complete()},
         {"evaluated", r.evaluated},
         {"skipped", r.skipped},
         {"verifiedItems", r.verified},
         {"minimumCount", nullptr},
         {"histogram", hist},
         {"witnessTotal", r.witness_total},
         {"witnesses", witnesses}};
  if (r.minimum) {
    j["minimumCount"] = *r.minimum;
  }
  if (r.kind == SearchKind::unique_product) {
    j["belowTwoUniqueProducts"] = r.below_two();
  }
  return j;
}

SearchReport search_report_from_json(const json& j) {
  try {
    SearchReport r;
    auto const kind = j.at("kind").get<std::string>();
    r.kind = kind == "up" ? SearchKind::unique_product : SearchKind::diffuse;
    r.vector.p = j.at("group").at("p").get<unsigned>();
    r.vector.e = j.at("group").at("e").get<std::vector<unsigned>>();
    auto const arena = j.at("arena").get<std::string>();
    r.arena = arena == "full-ball" ? Arena::full : Arena::kernel;
    r.radius = j.at("radius").get<unsigned>();
    r.max_subset_size = j.at("maxSubsetSize").get<unsigned>();
    r.mode = parse_mode(j.at("mode").get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.samples = j.at("samples").get<std::uint64_t>();
    for (auto const& w : j.at("arenaElements")) {
      r.arena_elements.push_back(parse_word(w.get<std::string>(), r.vector.p));
    }
    r.key_depth = j.at("keyDepth").get<unsigned>();
    r.total_items = j.at("totalItems").get<std::uint64_t>();
    r.start_cursor = j.at("startCursor").get<std::uint64_t>();
    r.cursor = j.at("cursor").get<std::uint64_t>();
    r.evaluated = j.at("evaluated").get<std::uint64_t>();
    r.skipped = j.at("skipped").get<std::uint64_t>();
    r.verified = j.at("verifiedItems").get<std::uint64_t>();
    if (!j.at("minimumCount").is_null()) {
      r.minimum = j.at("minimumCount").get<std::size_t>();
    }
    for (auto const& [k, v] : j.at("histogram").items()) {
      r.histogram[std::stoull(k)] = v.get<std::uint64_t>();
    }
    r.witness_total = j.at("witnessTotal").get<std::uint64_t>();
    for (auto const& wj : j.at("witnesses")) {
      Witness w;
      w.cursor = wj.at("cursor").get<std::uint64_t>();
      w.count = wj.at("count").get<std::size_t>();
      w.recomputed = wj.at("recomputedCount").get<std::size_t>();
      w.transcript = wj.at("transcript").get<std::vector<std::string>>();
      w.a = wj.at("aIndices").get<std::vector<std::size_t>>();
      if (wj.contains("bIndices")) {
        w.b = wj.at("bIndices").get<std::vector<std::size_t>>();
      }
      r.witnesses.push_back(std::move(w));
    }
    return r;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed search report: ") + e.what());
  }
}

std::string histogram_csv(const SearchReport& r) {
  std::string out = r.kind == SearchKind::unique_product ? "uniqueProducts,items\n" : "extremalElements,items\n";
  for (auto const& [k, v] : r.histogram) {
    out += std::to_string(k) + "," + std::to_string(v) + "\n";
  }
  return out;
}

}  // namespace branchlab

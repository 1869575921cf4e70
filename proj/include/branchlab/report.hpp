#pragma once

#include <string>

#include "json.hpp"

#include "branchlab/ggs.hpp"
#include "branchlab/group.hpp"
#include "branchlab/quotient.hpp"
#include "branchlab/search.hpp"

namespace branchlab {

using json = nlohmann::json;

// Orders and other big integers go out as decimal strings.
std::string to_decimal(const BigInt& n);

json to_json(const GgsVector& v);
json to_json(const RelationReport& r);
// Fields: p, e, n, order, pPowerExponent, transitive, abelianQuotientOrder,
// elementaryAbelian (plus offendingFactor when certification fails).
json to_json(const QuotientReport& r);
json to_json(const SearchReport& r);

SearchReport search_report_from_json(const json& j);

// "<count>,items" rows of the search histogram.
std::string histogram_csv(const SearchReport& r);

}  // namespace branchlab

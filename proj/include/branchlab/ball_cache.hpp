#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "branchlab/group.hpp"
#include "branchlab/search.hpp"

namespace branchlab {

inline constexpr int kBallCacheVersion = 1;

// Text format: a versioned header (format version, p, e, radius, arena,
// length convention, key depth, count), then one "<word>\t<key>" line per
// element in ball order.
void write_ball_cache(std::ostream& out, const Ball& b);

// Rejects a header that does not match G, and any line whose key does not
// match its word.
Ball read_ball_cache(std::istream& in, const GgsGroup& G);

std::string ball_cache_filename(const GgsVector& v, unsigned radius, Arena arena);

// Reads dir/<filename> if present, otherwise builds the ball and writes it.
Ball cached_ball(const std::filesystem::path& dir, const GgsGroup& G, unsigned radius, Arena arena,
                 std::size_t element_budget = kDefaultElementBudget);

}  // namespace branchlab

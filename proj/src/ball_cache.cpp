#include "branchlab/ball_cache.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "branchlab/error.hpp"

namespace branchlab {

namespace {

std::string join_vector(const std::vector<unsigned>& e, char sep) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) {
      out += sep;
    }
    out += std::to_string(e[i]);
  }
  return out;
}

std::string expect_field(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) {
    throw InvalidInput("ball cache: truncated header, missing '" + name + "'");
  }
  auto const space = line.find(' ');
  if (space == std::string::npos || line.substr(0, space) != name) {
    throw InvalidInput("ball cache: expected header field '" + name + "', got '" + line + "'");
  }
  return line.substr(space + 1);
}

std::uint64_t parse_count(const std::string& text, const std::string& name) {
  std::uint64_t v = 0;
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw InvalidInput("ball cache: malformed " + name + " '" + text + "'");
  }
  return v;
}

}  // namespace

void write_ball_cache(std::ostream& out, const Ball& b) {
  out << "branchlab-ball-cache " << kBallCacheVersion << '\n'
      << "p " << b.vector.p << '\n'
      << "e " << join_vector(b.vector.e, ',') << '\n'
      << "radius " << b.radius << '\n'
      << "arena " << to_string(b.arena) << '\n'
      << "length syllable\n"
      << "key-depth " << b.key_depth << '\n'
      << "count " << b.elements.size() << '\n';
  for (std::size_t i = 0; i < b.elements.size(); ++i) {
    out << to_string(b.elements[i]) << '\t' << b.keys[i] << '\n';
  }
}

Ball read_ball_cache(std::istream& in, const GgsGroup& G) {
  if (expect_field(in, "branchlab-ball-cache") != std::to_string(kBallCacheVersion)) {
    throw InvalidInput("ball cache: unsupported format version");
  }
  Ball b;
  b.vector = G.vector();
  if (expect_field(in, "p") != std::to_string(G.degree()) ||
      expect_field(in, "e") != join_vector(G.vector().e, ',')) {
    throw InvalidInput("ball cache: group does not match");
  }
  b.radius = static_cast<unsigned>(parse_count(expect_field(in, "radius"), "radius"));
  b.arena = parse_arena(expect_field(in, "arena"));
  if (expect_field(in, "length") != "syllable") {
    throw InvalidInput("ball cache: unknown length convention");
  }
  b.key_depth = static_cast<unsigned>(parse_count(expect_field(in, "key-depth"), "key depth"));
  auto const count = parse_count(expect_field(in, "count"), "count");
  std::string line;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) {
      throw InvalidInput("ball cache: fewer elements than declared");
    }
    auto const tab = line.find('\t');
    if (tab == std::string::npos) {
      throw InvalidInput("ball cache: malformed element line");
    }
    Word w = parse_word(line.substr(0, tab), G.degree());
    std::string key = line.substr(tab + 1);
    if (canonical_key(w, b.key_depth, G) != key) {
      throw InvalidInput("ball cache: key mismatch for '" + line.substr(0, tab) + "'");
    }
    b.elements.push_back(std::move(w));
    b.keys.push_back(std::move(key));
  }
  return b;
}

std::string ball_cache_filename(const GgsVector& v, unsigned radius, Arena arena) {
  return "ball-v" + std::to_string(kBallCacheVersion) + "-p" + std::to_string(v.p) + "-e" +
         join_vector(v.e, '_') + "-r" + std::to_string(radius) + "-" + to_string(arena) + ".txt";
}

Ball cached_ball(const std::filesystem::path& dir, const GgsGroup& G, unsigned radius, Arena arena,
                 std::size_t element_budget) {
  auto const path = dir / ball_cache_filename(G.vector(), radius, arena);
  if (std::ifstream in(path); in) {
    Ball b = read_ball_cache(in, G);
    if (b.radius != radius || b.arena != arena) {
      throw InvalidInput("ball cache: " + path.string() + " holds a different ball");
    }
    return b;
  }
  Ball b = ball(G, radius, arena, element_budget);
  std::filesystem::create_directories(dir);
  auto const tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    write_ball_cache(out, b);
  }
  std::filesystem::rename(tmp, path);
  return b;
}

}  // namespace branchlab

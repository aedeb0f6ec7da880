#include "mono/pattern.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>

#include "mono/combinatorics.hpp"
#include "mono/error.hpp"

namespace mono {
namespace {

void require_exhaustive(int r) {
  if (r > kMaxExhaustiveVertices)
    throw CapabilityError("pattern has " + std::to_string(r) +
                          " vertices; exhaustive search is limited to " +
                          std::to_string(kMaxExhaustiveVertices));
}

}  // namespace

EdgeSet relabel(const EdgeSet& edges, const std::vector<int>& perm) {
  EdgeSet out;
  out.reserve(edges.size());
  for (const auto& [u, v] : edges) {
    const int a = perm[static_cast<std::size_t>(u)];
    const int b = perm[static_cast<std::size_t>(v)];
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t automorphism_count(int r, const EdgeSet& edges) {
  require_exhaustive(r);
  std::vector<int> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t count = 0;
  do {
    if (relabel(edges, perm) == edges) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

Pattern::Pattern(int r, EdgeSet edges) : r_(r), edges_(std::move(edges)) {
  if (r_ < 2) throw DomainError("pattern needs at least 2 vertices");
  require_exhaustive(r_);
  for (auto& [u, v] : edges_) {
    if (u == v) throw DomainError("self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= r_)
      throw DomainError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                        ") out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw DomainError("duplicate edge");
  if (edges_.empty()) throw DomainError("pattern needs at least one edge");
  aut_ = automorphism_count(r_, edges_);
  d1_ = Rational(static_cast<long long>(edges_.size()), r_ - 1);
}

Pattern Pattern::complete(int r) {
  EdgeSet e;
  for (int u = 0; u < r; ++u)
    for (int v = u + 1; v < r; ++v) e.emplace_back(u, v);
  return Pattern(r, std::move(e));
}

bool Pattern::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

Pattern parse_pattern(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;

  auto next_content_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_content_line()) throw ParseError(1, "empty pattern file");
  int r = 0;
  int s = 0;
  {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> r >> s) || (ls >> extra))
      throw ParseError(lineno, "expected header \"r s\"");
  }
  if (r < 2) throw ParseError(lineno, "r must be at least 2");
  if (s < 1) throw ParseError(lineno, "s must be at least 1");
  if (r > kMaxExhaustiveVertices)
    throw CapabilityError("pattern has " + std::to_string(r) +
                          " vertices; exhaustive search is limited to " +
                          std::to_string(kMaxExhaustiveVertices));

  EdgeSet edges;
  std::set<Edge> seen;
  for (int i = 0; i < s; ++i) {
    if (!next_content_line())
      throw ParseError(lineno + 1, "expected " + std::to_string(s) + " edges, found " +
                                       std::to_string(i));
    std::istringstream ls(line);
    int u = 0;
    int v = 0;
    std::string extra;
    if (!(ls >> u >> v) || (ls >> extra)) throw ParseError(lineno, "expected \"u v\"");
    if (u < 0 || v < 0 || u >= r || v >= r)
      throw ParseError(lineno, "vertex out of range [0," + std::to_string(r) + ")");
    if (u >= v) throw ParseError(lineno, "expected u < v");
    if (!seen.insert({u, v}).second) throw ParseError(lineno, "duplicate edge");
    edges.emplace_back(u, v);
  }
  if (next_content_line())
    throw ParseError(lineno, "more edge lines than declared s = " + std::to_string(s));
  return Pattern(r, std::move(edges));
}

Pattern load_pattern(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open pattern file " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_pattern(buf.str());
}

BalanceReport is_strictly_1_balanced(const Pattern& p) {
  const int r = p.r();
  const int s = p.s();
  require_exhaustive(r);
  // For a fixed vertex set the one-density grows with the edge count, so
  // it suffices to test the densest admissible edge subset of each vertex
  // set: every induced edge, or all but one when the vertex set is V(F)
  // (F itself is not a proper subgraph).
  std::vector<int> order(static_cast<std::size_t>(1) << r);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [](int a, int b) {
    return __builtin_popcount(static_cast<unsigned>(a)) <
           __builtin_popcount(static_cast<unsigned>(b));
  });
  const unsigned full = (1u << r) - 1;
  for (int mask_i : order) {
    const unsigned mask = static_cast<unsigned>(mask_i);
    const int nv = __builtin_popcount(mask);
    if (nv < 2) continue;
    EdgeSet induced;
    for (const auto& e : p.edges())
      if ((mask >> e.first & 1u) && (mask >> e.second & 1u)) induced.push_back(e);
    if (mask == full) induced.pop_back();  // drop any one edge; all choices tie
    if (induced.empty()) continue;
    const auto ne = static_cast<long long>(induced.size());
    // ne / (nv - 1) >= s / (r - 1)  <=>  ne (r - 1) >= s (nv - 1)
    if (ne * (r - 1) >= static_cast<long long>(s) * (nv - 1)) {
      Subgraph w;
      for (int v = 0; v < r; ++v)
        if (mask >> v & 1u) w.vertices.push_back(v);
      w.edges = std::move(induced);
      w.d1 = Rational(ne, nv - 1);
      return {false, std::move(w)};
    }
  }
  return {true, std::nullopt};
}

LabeledCopySet::LabeledCopySet(const Pattern& p) : pattern_(p) {
  const auto perms = all_permutations(p.r());
  std::vector<EdgeSet> images;
  images.reserve(perms.size());
  for (const auto& perm : perms) images.push_back(relabel(p.edges(), perm));
  reps_ = images;
  std::sort(reps_.begin(), reps_.end());
  reps_.erase(std::unique(reps_.begin(), reps_.end()), reps_.end());
  perm_to_copy_.reserve(images.size());
  for (const auto& img : images) perm_to_copy_.push_back(*find(img));
}

std::optional<std::uint32_t> LabeledCopySet::find(const EdgeSet& canonical) const {
  const auto it = std::lower_bound(reps_.begin(), reps_.end(), canonical);
  if (it == reps_.end() || *it != canonical) return std::nullopt;
  return static_cast<std::uint32_t>(it - reps_.begin());
}

}  // namespace mono

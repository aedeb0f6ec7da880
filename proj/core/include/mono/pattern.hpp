#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "mono/rational.hpp"

namespace mono {

using Edge = std::pair<int, int>;  // always first < second
using EdgeSet = std::vector<Edge>;  // sorted lexicographically

// Exhaustive automorphism and subgraph searches refuse patterns above this.
inline constexpr int kMaxExhaustiveVertices = 10;

// The fixed graph F on vertices {0..r-1}. Immutable once built.
class Pattern {
 public:
  // Validates and canonicalises `edges`; computes aut(F) and d1(F).
  // Throws DomainError on self-loops, duplicates or out-of-range vertices,
  // CapabilityError when r exceeds kMaxExhaustiveVertices.
  Pattern(int r, EdgeSet edges);

  static Pattern complete(int r);

  int r() const noexcept { return r_; }
  int s() const noexcept { return static_cast<int>(edges_.size()); }
  const EdgeSet& edges() const noexcept { return edges_; }
  std::uint64_t aut_count() const noexcept { return aut_; }
  // One-density s / (r - 1).
  const Rational& d1() const noexcept { return d1_; }

  bool has_edge(int u, int v) const;

  friend bool operator==(const Pattern& a, const Pattern& b) {
    return a.r_ == b.r_ && a.edges_ == b.edges_;
  }

 private:
  int r_;
  EdgeSet edges_;
  std::uint64_t aut_;
  Rational d1_;
};

// Parses the pattern file format: "r s" followed by s lines "u v" with
// 0 <= u < v < r. Errors name the offending line.
Pattern parse_pattern(std::string_view text);
Pattern load_pattern(const std::string& path);

// |{pi in S_r : pi(E(F)) = E(F)}| by exhaustive search.
std::uint64_t automorphism_count(int r, const EdgeSet& edges);
inline std::uint64_t automorphism_count(const Pattern& p) { return p.aut_count(); }

// Applies a vertex relabelling (local label i -> perm[i]) and returns the
// canonical sorted edge set.
EdgeSet relabel(const EdgeSet& edges, const std::vector<int>& perm);

struct Subgraph {
  std::vector<int> vertices;
  EdgeSet edges;
  Rational d1;
};

struct BalanceReport {
  bool strictly_balanced = false;
  std::optional<Subgraph> witness;  // set iff !strictly_balanced
};

// True iff every proper subgraph with >= 2 vertices and >= 1 edge has
// one-density strictly below d1(F). Exact arithmetic throughout.
BalanceReport is_strictly_1_balanced(const Pattern& p);

// The distinct labelled copies of F on r labelled vertices: one canonical
// edge set per orbit of S_r, sorted. Also records, for each permutation in
// lexicographic order, which representative it produces.
class LabeledCopySet {
 public:
  explicit LabeledCopySet(const Pattern& p);

  const Pattern& pattern() const noexcept { return pattern_; }
  const std::vector<EdgeSet>& representatives() const noexcept { return reps_; }
  std::size_t count() const noexcept { return reps_.size(); }

  // Copy index produced by relabelling F with the permutation whose
  // lexicographic index is `perm_index`.
  std::uint32_t copy_of_permutation(std::size_t perm_index) const {
    return perm_to_copy_[perm_index];
  }

  // Index of a canonical edge set on {0..r-1}; nullopt if it is not a copy.
  std::optional<std::uint32_t> find(const EdgeSet& canonical) const;

 private:
  Pattern pattern_;
  std::vector<EdgeSet> reps_;
  std::vector<std::uint32_t> perm_to_copy_;
};

inline LabeledCopySet labeled_copies(const Pattern& p) { return LabeledCopySet(p); }

}  // namespace mono

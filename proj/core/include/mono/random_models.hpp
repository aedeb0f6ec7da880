#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mono/pattern.hpp"
#include "mono/seed.hpp"

namespace mono {

// A simple graph on [n].
class HostGraph {
 public:
  // Edges are canonicalised (u < v) and sorted; throws DomainError on
  // self-loops, duplicates or out-of-range endpoints.
  HostGraph(int n, EdgeSet edges);

  static HostGraph complete(int n);

  int n() const noexcept { return n_; }
  const EdgeSet& edges() const noexcept { return edges_; }
  std::span<const int> neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  bool adjacent(int u, int v) const;
  int max_degree() const;

 private:
  int n_;
  EdgeSet edges_;
  std::vector<std::vector<int>> adj_;  // sorted
};

struct HyperEdge {
  std::vector<int> vertices;  // strictly increasing, size r
  std::uint32_t copy = 0;     // index into LabeledCopySet::representatives()

  friend auto operator<=>(const HyperEdge&, const HyperEdge&) = default;
};

// A sampled F-graph on [n]: every hyperedge is one labelled copy of F on an
// r-subset. Hyperedges are kept sorted by (vertices, copy).
class FHypergraph {
 public:
  FHypergraph(int n, std::shared_ptr<const LabeledCopySet> copies,
              std::vector<HyperEdge> hyperedges, double q = 0.0);

  int n() const noexcept { return n_; }
  int r() const noexcept { return pattern().r(); }
  const Pattern& pattern() const noexcept { return copies_->pattern(); }
  const LabeledCopySet& copy_set() const noexcept { return *copies_; }
  std::shared_ptr<const LabeledCopySet> copy_set_ptr() const noexcept { return copies_; }
  const std::vector<HyperEdge>& hyperedges() const noexcept { return edges_; }
  std::size_t size() const noexcept { return edges_.size(); }
  double q() const noexcept { return q_; }

  friend bool operator==(const FHypergraph& a, const FHypergraph& b) {
    return a.n_ == b.n_ && a.pattern() == b.pattern() && a.edges_ == b.edges_;
  }

 private:
  int n_;
  std::shared_ptr<const LabeledCopySet> copies_;
  std::vector<HyperEdge> edges_;
  double q_;
};

// Each of the C(n,2) pairs independently with probability p.
HostGraph sample_gnp(int n, double p, const Seed& seed);

enum class SamplerPath { automatic, sparse, dense };

// Number of potential copies C(n, r) * r!/aut(F).
std::uint64_t potential_copies(const LabeledCopySet& copies, int n);

// Each potential copy independently with probability q. The sparse path
// draws a Binomial(N, q) count and then that many distinct ranks; the dense
// path flips one coin per copy. `automatic` uses the sparse path when
// N q < n log n.
FHypergraph sample_fgraph(std::shared_ptr<const LabeledCopySet> copies, int n, double q,
                          const Seed& seed, SamplerPath path = SamplerPath::automatic);
FHypergraph sample_fgraph(const Pattern& pattern, int n, double q, const Seed& seed,
                          SamplerPath path = SamplerPath::automatic);

// r-uniform hypergraph with one K_r hyperedge per r-set that supports at
// least one copy of F in h.
FHypergraph couple_to_kr(const FHypergraph& h);

// Bijection between [0, C(n,r) r!/aut(F)) and (colex-ranked r-subset, copy).
std::uint64_t rank_copy(const LabeledCopySet& copies, int n, const HyperEdge& e);
HyperEdge unrank_copy(const LabeledCopySet& copies, int n, std::uint64_t rank);

// Text serialisation: "n m" then m lines "v1 ... vr copy_index".
std::string serialize(const FHypergraph& h);
FHypergraph parse_hypergraph(std::string_view text, std::shared_ptr<const LabeledCopySet> copies);

}  // namespace mono

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "mono/pattern.hpp"
#include "mono/random_models.hpp"
#include "mono/rational.hpp"
#include "mono/spin.hpp"

namespace mono {

// All distinct copies of F inside a host graph. Each copy is stored like a
// hyperedge: its sorted vertex set plus the index of the labelled copy of F
// it realises on those vertices.
class CopyList {
 public:
  CopyList(const HostGraph& host, std::shared_ptr<const LabeledCopySet> copies,
           std::vector<HyperEdge> found);

  int n() const noexcept { return n_; }
  const Pattern& pattern() const noexcept { return copies_->pattern(); }
  const std::vector<HyperEdge>& copies() const noexcept { return found_; }
  std::size_t size() const noexcept { return found_.size(); }
  // Indices into copies() of every copy containing v.
  std::span<const std::uint32_t> incident(int v) const;

  // The same copies viewed as an F-hypergraph on [n].
  FHypergraph as_hypergraph() const;

 private:
  int n_;
  std::shared_ptr<const LabeledCopySet> copies_;
  std::vector<HyperEdge> found_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> incidence_;
};

// Backtracking search refuses instances whose estimated number of partial
// embeddings n * maxdeg^(r-1) exceeds this.
inline constexpr double kMaxEmbeddingWork = 2e9;

CopyList enumerate_copies(const HostGraph& host, const Pattern& pattern);
CopyList enumerate_copies(const HostGraph& host, std::shared_ptr<const LabeledCopySet> copies);

// Number of hyperedges whose vertex set is monochromatic under sigma.
std::int64_t hamiltonian(const FHypergraph& h, const SpinConfig& sigma);
std::int64_t hamiltonian_graph(const CopyList& copies, const SpinConfig& sigma);

// f(x) = sum over non-empty even subsets R of [r] of prod_{j in R} x_j,
// evaluated from the definition (2^r subsets). Entries must be +-1.
std::int64_t f_poly(std::span<const int> x);
// Closed form 2^{r-1} [all entries equal] - 1.
std::int64_t f_poly_closed(std::span<const int> x);

// Sum of f over all n^r ordered r-tuples of spins:
// n^r ((1 + m)^r + (1 - m)^r - 2) / 2 with m the magnetization.
Rational f_tuple_sum(const SpinConfig& sigma, int r);

// Right-hand side of the spin-polynomial expansion of H(sigma): the sum over
// distinct r-tuples and permutations of the copy indicator times f, divided
// by aut(F) 2^{r-1} r!, plus |E| / 2^{r-1}. Exact.
Rational spin_form_rhs(const FHypergraph& h, const SpinConfig& sigma);

}  // namespace mono

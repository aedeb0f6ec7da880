#include "mono/subgraph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "mono/combinatorics.hpp"
#include "mono/error.hpp"

namespace mono {
namespace {

bool monochromatic(std::span<const int> vertices, const SpinConfig& sigma) {
  const int first = sigma[vertices[0]];
  for (int v : vertices)
    if (sigma[v] != first) return false;
  return true;
}

void check_length(int n, const SpinConfig& sigma) {
  if (sigma.n() != n)
    throw DomainError("spin configuration has length " + std::to_string(sigma.n()) +
                      ", instance has " + std::to_string(n) + " vertices");
}

// Embedding order for backtracking: each vertex after the first of its
// component has an earlier neighbour whenever possible.
std::vector<int> embedding_order(const Pattern& p) {
  const int r = p.r();
  std::vector<int> order;
  std::vector<bool> placed(static_cast<std::size_t>(r), false);
  while (static_cast<int>(order.size()) < r) {
    int best = -1;
    int best_links = -1;
    for (int v = 0; v < r; ++v) {
      if (placed[static_cast<std::size_t>(v)]) continue;
      int links = 0;
      for (int u : order)
        if (p.has_edge(u, v)) ++links;
      if (links > best_links) {
        best = v;
        best_links = links;
      }
    }
    placed[static_cast<std::size_t>(best)] = true;
    order.push_back(best);
  }
  return order;
}

}  // namespace

CopyList::CopyList(const HostGraph& host, std::shared_ptr<const LabeledCopySet> copies,
                   std::vector<HyperEdge> found)
    : n_(host.n()), copies_(std::move(copies)), found_(std::move(found)) {
  std::sort(found_.begin(), found_.end());
  found_.erase(std::unique(found_.begin(), found_.end()), found_.end());
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (const auto& c : found_)
    for (int v : c.vertices) ++offsets_[static_cast<std::size_t>(v) + 1];
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  incidence_.resize(offsets_.back());
  auto fill = offsets_;
  for (std::uint32_t i = 0; i < found_.size(); ++i)
    for (int v : found_[i].vertices) incidence_[fill[static_cast<std::size_t>(v)]++] = i;
}

std::span<const std::uint32_t> CopyList::incident(int v) const {
  const auto b = offsets_[static_cast<std::size_t>(v)];
  const auto e = offsets_[static_cast<std::size_t>(v) + 1];
  return std::span<const std::uint32_t>(incidence_).subspan(b, e - b);
}

FHypergraph CopyList::as_hypergraph() const { return FHypergraph(n_, copies_, found_); }

CopyList enumerate_copies(const HostGraph& host, const Pattern& pattern) {
  return enumerate_copies(host, std::make_shared<const LabeledCopySet>(pattern));
}

CopyList enumerate_copies(const HostGraph& host, std::shared_ptr<const LabeledCopySet> copies) {
  const Pattern& p = copies->pattern();
  const int r = p.r();
  const int n = host.n();
  const auto order = embedding_order(p);

  double work = 1.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    bool linked = false;
    for (std::size_t j = 0; j < i; ++j) linked = linked || p.has_edge(order[i], order[j]);
    work *= linked ? std::max(1, host.max_degree()) : n;
  }
  if (work > kMaxEmbeddingWork) {
    std::ostringstream msg;
    msg << "copy enumeration would explore about " << work
        << " partial embeddings (limit " << kMaxEmbeddingWork << ")";
    throw CapabilityError(msg.str());
  }

  // Pattern neighbours of order[i] among order[0..i).
  std::vector<std::vector<int>> back(static_cast<std::size_t>(r));
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (p.has_edge(order[i], order[j])) back[i].push_back(static_cast<int>(j));

  std::set<HyperEdge> found;
  std::vector<int> image(static_cast<std::size_t>(r), -1);  // by position in order
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::vector<int> local_to_host(static_cast<std::size_t>(r));
  std::vector<int> perm(static_cast<std::size_t>(r));

  auto record = [&] {
    for (std::size_t i = 0; i < order.size(); ++i)
      local_to_host[static_cast<std::size_t>(order[i])] = image[i];
    HyperEdge e;
    e.vertices = local_to_host;
    std::sort(e.vertices.begin(), e.vertices.end());
    for (int i = 0; i < r; ++i) {
      const auto it = std::lower_bound(e.vertices.begin(), e.vertices.end(),
                                       local_to_host[static_cast<std::size_t>(i)]);
      perm[static_cast<std::size_t>(i)] = static_cast<int>(it - e.vertices.begin());
    }
    e.copy = copies->copy_of_permutation(permutation_index(perm));
    found.insert(std::move(e));
  };

  auto extend = [&](auto&& self, std::size_t depth) -> void {
    if (depth == order.size()) {
      record();
      return;
    }
    auto try_vertex = [&](int v) {
      if (used[static_cast<std::size_t>(v)]) return;
      for (int j : back[depth])
        if (!host.adjacent(image[static_cast<std::size_t>(j)], v)) return;
      used[static_cast<std::size_t>(v)] = true;
      image[depth] = v;
      self(self, depth + 1);
      used[static_cast<std::size_t>(v)] = false;
    };
    if (back[depth].empty()) {
      for (int v = 0; v < n; ++v) try_vertex(v);
    } else {
      for (int v : host.neighbors(image[static_cast<std::size_t>(back[depth][0])])) try_vertex(v);
    }
  };
  extend(extend, 0);
  return CopyList(host, std::move(copies), std::vector<HyperEdge>(found.begin(), found.end()));
}

std::int64_t hamiltonian(const FHypergraph& h, const SpinConfig& sigma) {
  check_length(h.n(), sigma);
  std::int64_t count = 0;
  for (const auto& e : h.hyperedges())
    if (monochromatic(e.vertices, sigma)) ++count;
  return count;
}

std::int64_t hamiltonian_graph(const CopyList& copies, const SpinConfig& sigma) {
  check_length(copies.n(), sigma);
  std::int64_t count = 0;
  for (const auto& e : copies.copies())
    if (monochromatic(e.vertices, sigma)) ++count;
  return count;
}

std::int64_t f_poly(std::span<const int> x) {
  const std::size_t r = x.size();
  for (int v : x)
    if (v != 1 && v != -1) throw DomainError("f_poly entries must be +1 or -1");
  if (r > 20) throw CapabilityError("f_poly subset expansion limited to r <= 20");
  std::int64_t total = 0;
  for (std::uint32_t mask = 1; mask < (1u << r); ++mask) {
    if (__builtin_popcount(mask) % 2 != 0) continue;
    int prod = 1;
    for (std::size_t j = 0; j < r; ++j)
      if (mask >> j & 1u) prod *= x[j];
    total += prod;
  }
  return total;
}

std::int64_t f_poly_closed(std::span<const int> x) {
  for (int v : x)
    if (v != 1 && v != -1) throw DomainError("f_poly entries must be +1 or -1");
  const bool equal = std::all_of(x.begin(), x.end(), [&](int v) { return v == x[0]; });
  return (equal ? (std::int64_t{1} << (x.size() - 1)) : 0) - 1;
}

Rational f_tuple_sum(const SpinConfig& sigma, int r) {
  if (r < 1) throw DomainError("f_tuple_sum needs r >= 1");
  const BigInt n = sigma.n();
  const BigInt j = sigma.spin_sum();
  const BigInt twice = pow(n + j, static_cast<unsigned>(r)) + pow(n - j, static_cast<unsigned>(r)) -
                       2 * pow(n, static_cast<unsigned>(r));
  return Rational(twice, 2);
}

Rational spin_form_rhs(const FHypergraph& h, const SpinConfig& sigma) {
  check_length(h.n(), sigma);
  const int r = h.r();
  const auto& copies = h.copy_set();
  const auto perms = all_permutations(r);
  std::vector<int> tau(static_cast<std::size_t>(r));
  std::vector<int> spins(static_cast<std::size_t>(r));
  std::vector<bool> present(copies.count());

  // Tuples (v_1..v_r) of distinct vertices contribute only when their
  // vertex set supports a hyperedge, so iterate supports, then every
  // ordering pi of the support (v_i = B[pi_i]) and every rho in S_r.
  BigInt weighted = 0;
  const auto& edges = h.hyperedges();
  for (std::size_t a = 0; a < edges.size();) {
    std::size_t b = a;
    std::fill(present.begin(), present.end(), false);
    while (b < edges.size() && edges[b].vertices == edges[a].vertices) present[edges[b++].copy] = true;
    const auto& support = edges[a].vertices;
    for (const auto& pi : perms) {
      for (int i = 0; i < r; ++i)
        spins[static_cast<std::size_t>(i)] = sigma[support[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])]];
      const std::int64_t f = f_poly(spins);
      for (const auto& rho : perms) {
        // F(v_rho(1), ..., v_rho(r)): local label i lands on support
        // position pi(rho(i)).
        for (int i = 0; i < r; ++i)
          tau[static_cast<std::size_t>(i)] = pi[static_cast<std::size_t>(rho[static_cast<std::size_t>(i)])];
        if (present[copies.copy_of_permutation(permutation_index(tau))]) weighted += f;
      }
    }
    a = b;
  }
  const BigInt two_pow = BigInt(1) << (r - 1);
  const BigInt denom = BigInt(h.pattern().aut_count()) * two_pow * BigInt(factorial(r));
  return Rational(weighted, denom) + Rational(BigInt(h.size()), two_pow);
}

}  // namespace mono

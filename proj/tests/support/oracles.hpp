#pragma once

// Brute-force reference implementations used only by the tests. Each one
// follows the plain definition and shares no code path with the library
// routine it checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "mono/optimizer.hpp"
#include "mono/pattern.hpp"
#include "mono/random_models.hpp"
#include "mono/rational.hpp"
#include "mono/spin.hpp"
#include "mono/surrogate.hpp"

namespace oracle {

inline std::vector<std::pair<int, int>> sorted_edges(std::vector<std::pair<int, int>> e) {
  for (auto& [u, v] : e)
    if (u > v) std::swap(u, v);
  std::sort(e.begin(), e.end());
  return e;
}

// |{pi : pi(E) = E}| via std::next_permutation.
inline std::uint64_t automorphisms(int r, const mono::EdgeSet& edges) {
  std::vector<int> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), 0);
  const auto base = sorted_edges(edges);
  std::uint64_t count = 0;
  do {
    std::vector<std::pair<int, int>> img;
    for (auto [u, v] : edges) img.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    count += sorted_edges(img) == base;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

// Number of distinct relabelled edge sets.
inline std::size_t orbit_size(int r, const mono::EdgeSet& edges) {
  std::vector<int> perm(static_cast<std::size_t>(r));
  std::iota(perm.begin(), perm.end(), 0);
  std::set<std::vector<std::pair<int, int>>> seen;
  do {
    std::vector<std::pair<int, int>> img;
    for (auto [u, v] : edges) img.emplace_back(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
    seen.insert(sorted_edges(img));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return seen.size();
}

// Literal double loop: every vertex subset with >= 2 vertices, every
// non-empty edge subset of its induced edges; proper means not (all
// vertices and all edges).
inline bool strictly_balanced(int r, const mono::EdgeSet& edges) {
  const mono::Rational d = mono::Rational(static_cast<int>(edges.size()), r - 1);
  for (std::uint32_t vm = 0; vm < (1U << r); ++vm) {
    const int k = std::popcount(vm);
    if (k < 2) continue;
    std::vector<std::pair<int, int>> induced;
    for (auto [u, v] : edges)
      if ((vm >> u & 1U) && (vm >> v & 1U)) induced.emplace_back(u, v);
    const auto m = induced.size();
    for (std::uint64_t em = 1; em < (std::uint64_t{1} << m); ++em) {
      const int s = std::popcount(em);
      const bool whole = k == r && static_cast<std::size_t>(s) == edges.size();
      if (whole) continue;
      if (mono::Rational(s, k - 1) >= d) return false;
    }
  }
  return true;
}

// Injective homomorphisms F -> host, by trying every injective map.
inline std::uint64_t injective_homomorphisms(const mono::HostGraph& host, const mono::Pattern& p) {
  const int n = host.n();
  const int r = p.r();
  std::uint64_t count = 0;
  std::vector<int> img(static_cast<std::size_t>(r));
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == r) {
      for (auto [u, v] : p.edges())
        if (!host.adjacent(img[static_cast<std::size_t>(u)], img[static_cast<std::size_t>(v)])) return;
      ++count;
      return;
    }
    for (int x = 0; x < n; ++x) {
      if (used[static_cast<std::size_t>(x)]) continue;
      used[static_cast<std::size_t>(x)] = true;
      img[static_cast<std::size_t>(i)] = x;
      self(self, i + 1);
      used[static_cast<std::size_t>(x)] = false;
    }
  };
  rec(rec, 0);
  return count;
}

inline std::int64_t hamiltonian(const std::vector<std::vector<int>>& edges, const mono::SpinConfig& s) {
  std::int64_t h = 0;
  for (const auto& e : edges) {
    bool mono = true;
    for (int v : e) mono = mono && s[v] == s[e.front()];
    h += mono;
  }
  return h;
}

inline std::vector<std::vector<int>> vertex_sets(const mono::FHypergraph& h) {
  std::vector<std::vector<int>> out;
  for (const auto& e : h.hyperedges()) out.push_back(e.vertices);
  return out;
}

inline std::vector<std::vector<int>> vertex_sets(const mono::HyperInstance& h) {
  std::vector<std::vector<int>> out;
  for (std::size_t e = 0; e < h.size(); ++e) out.emplace_back(h.edge(e).begin(), h.edge(e).end());
  return out;
}

// Minimum of H over all 2^n configurations (optionally only plus counts in
// [lo, hi]); no symmetry, no Gray code.
inline std::int64_t min_h(const std::vector<std::vector<int>>& edges, int n, int lo = 0, int hi = -1) {
  if (hi < 0) hi = n;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    const int k = std::popcount(m);
    if (k < lo || k > hi) continue;
    best = std::min(best, hamiltonian(edges, mono::SpinConfig::from_mask(n, m)));
  }
  return best;
}

// f from the subset definition, written independently.
inline std::int64_t f_subsets(const std::vector<int>& x) {
  const int r = static_cast<int>(x.size());
  std::int64_t sum = 0;
  for (std::uint32_t m = 1; m < (1U << r); ++m) {
    if (std::popcount(m) % 2 != 0) continue;
    std::int64_t prod = 1;
    for (int j = 0; j < r; ++j)
      if (m >> j & 1U) prod *= x[static_cast<std::size_t>(j)];
    sum += prod;
  }
  return sum;
}

template <typename Fn>
void for_each_ordered_tuple(int n, int r, Fn&& fn) {
  std::vector<int> t(static_cast<std::size_t>(r), 0);
  for (;;) {
    fn(t);
    int i = r - 1;
    while (i >= 0 && ++t[static_cast<std::size_t>(i)] == n) t[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) return;
  }
}

inline std::vector<int> spins_at(const mono::SpinConfig& s, const std::vector<int>& t) {
  std::vector<int> x;
  for (int v : t) x.push_back(s[v]);
  return x;
}

inline mono::BigInt covariance(const mono::SpinConfig& x, const mono::SpinConfig& y, int r) {
  mono::BigInt sum = 0;
  for_each_ordered_tuple(x.n(), r, [&](const std::vector<int>& t) {
    sum += f_subsets(spins_at(x, t)) * f_subsets(spins_at(y, t));
  });
  return sum;
}

// Number of distinct orderings of a tuple, by permutation enumeration.
inline double orderings(std::vector<int> t) {
  std::sort(t.begin(), t.end());
  double c = 0;
  do ++c;
  while (std::next_permutation(t.begin(), t.end()));
  return c;
}

// U over ordered tuples: sqrt(r!) sum_t J(sorted t) f(sigma_t) / g(t), which
// equals the sorted-tuple sum because each sorted tuple has g^2 orderings.
inline double u_ordered(const mono::GaussianField& field, const mono::SpinConfig& s) {
  const int r = field.r();
  double rf = 1;
  for (int i = 2; i <= r; ++i) rf *= i;
  double sum = 0.0;
  for_each_ordered_tuple(field.n(), r, [&](const std::vector<int>& t) {
    sum += field.at(t) * static_cast<double>(f_subsets(spins_at(s, t))) / std::sqrt(orderings(t));
  });
  return std::sqrt(rf) * sum;
}

// Max of U over plus count k by direct enumeration with the ordered oracle.
inline double max_u_slice(const mono::GaussianField& field, int k) {
  double best = -std::numeric_limits<double>::infinity();
  const int n = field.n();
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    if (std::popcount(m) == k) best = std::max(best, u_ordered(field, mono::SpinConfig::from_mask(n, m)));
  return best;
}

inline double mean(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

inline double stddev(const std::vector<double>& xs) {
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace oracle

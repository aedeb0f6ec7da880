#include "mono/random_models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <unordered_set>

#include "mono/combinatorics.hpp"
#include "mono/error.hpp"

namespace mono {
namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw DomainError(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

HostGraph::HostGraph(int n, EdgeSet edges) : n_(n), edges_(std::move(edges)) {
  if (n_ < 1) throw DomainError("host graph needs at least one vertex");
  for (auto& [u, v] : edges_) {
    if (u > v) std::swap(u, v);
    if (u == v) throw DomainError("self-loop in host graph");
    if (u < 0 || v >= n_) throw DomainError("host edge out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw DomainError("duplicate host edge");
  adj_.assign(static_cast<std::size_t>(n_), {});
  for (const auto& [u, v] : edges_) {
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

HostGraph HostGraph::complete(int n) {
  EdgeSet e;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return HostGraph(n, std::move(e));
}

bool HostGraph::adjacent(int u, int v) const {
  const auto& a = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(a.begin(), a.end(), v);
}

int HostGraph::max_degree() const {
  std::size_t d = 0;
  for (const auto& a : adj_) d = std::max(d, a.size());
  return static_cast<int>(d);
}

FHypergraph::FHypergraph(int n, std::shared_ptr<const LabeledCopySet> copies,
                         std::vector<HyperEdge> hyperedges, double q)
    : n_(n), copies_(std::move(copies)), edges_(std::move(hyperedges)), q_(q) {
  const int r = copies_->pattern().r();
  if (n_ < r) throw DomainError("hypergraph needs n >= r");
  for (const auto& e : edges_) {
    if (static_cast<int>(e.vertices.size()) != r) throw DomainError("hyperedge arity != r");
    for (std::size_t i = 0; i < e.vertices.size(); ++i) {
      if (e.vertices[i] < 0 || e.vertices[i] >= n_) throw DomainError("hyperedge vertex out of range");
      if (i > 0 && e.vertices[i - 1] >= e.vertices[i])
        throw DomainError("hyperedge vertices must be strictly increasing");
    }
    if (e.copy >= copies_->count()) throw DomainError("copy index out of range");
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw DomainError("duplicate hyperedge");
}

HostGraph sample_gnp(int n, double p, const Seed& seed) {
  check_probability(p, "p");
  if (n < 1) throw DomainError("n must be at least 1");
  Engine eng = make_engine(seed);
  EdgeSet edges;
  if (p >= 1.0) return HostGraph::complete(n);
  if (p > 0.0) {
    // Geometric skipping over the pairs (v, w), w < v, in row order.
    const double log_q = std::log1p(-p);
    long long v = 1;
    long long w = -1;
    while (v < n) {
      const double u = uniform01(eng);
      w += 1 + static_cast<long long>(std::floor(std::log1p(-u) / log_q));
      while (w >= v && v < n) {
        w -= v;
        ++v;
      }
      if (v < n) edges.emplace_back(static_cast<int>(w), static_cast<int>(v));
    }
  }
  return HostGraph(n, std::move(edges));
}

std::uint64_t potential_copies(const LabeledCopySet& copies, int n) {
  const std::uint64_t subsets = binomial(n, copies.pattern().r());
  const std::uint64_t per = copies.count();
  if (subsets > UINT64_MAX / per) throw DomainError("number of potential copies overflows");
  return subsets * per;
}

std::uint64_t rank_copy(const LabeledCopySet& copies, int n, const HyperEdge& e) {
  const int r = copies.pattern().r();
  if (static_cast<int>(e.vertices.size()) != r) throw DomainError("hyperedge arity != r");
  for (std::size_t i = 0; i < e.vertices.size(); ++i)
    if (e.vertices[i] < 0 || e.vertices[i] >= n || (i > 0 && e.vertices[i - 1] >= e.vertices[i]))
      throw DomainError("hyperedge is not an increasing r-subset of [n]");
  if (e.copy >= copies.count()) throw DomainError("copy index out of range");
  return colex_rank(e.vertices) * copies.count() + e.copy;
}

HyperEdge unrank_copy(const LabeledCopySet& copies, int n, std::uint64_t rank) {
  if (rank >= potential_copies(copies, n)) throw DomainError("copy rank out of range");
  const int r = copies.pattern().r();
  HyperEdge e;
  e.vertices.resize(static_cast<std::size_t>(r));
  e.copy = static_cast<std::uint32_t>(rank % copies.count());
  colex_unrank(rank / copies.count(), r, e.vertices);
  return e;
}

FHypergraph sample_fgraph(std::shared_ptr<const LabeledCopySet> copies, int n, double q,
                          const Seed& seed, SamplerPath path) {
  check_probability(q, "q");
  const int r = copies->pattern().r();
  if (n < r) throw DomainError("sample_fgraph needs n >= r");
  const std::uint64_t total = potential_copies(*copies, n);
  Engine eng = make_engine(seed);
  std::vector<HyperEdge> edges;

  if (path == SamplerPath::automatic) {
    const double expected = static_cast<double>(total) * q;
    path = expected < n * std::log(static_cast<double>(n)) ? SamplerPath::sparse
                                                          : SamplerPath::dense;
  }

  if (path == SamplerPath::sparse) {
    std::binomial_distribution<std::uint64_t> count_dist(total, q);
    const std::uint64_t k = q >= 1.0 ? total : count_dist(eng);
    std::vector<std::uint64_t> ranks;
    if (k * 2 > total) {
      // Dense selection: shuffle-free Knuth selection sampling.
      std::uint64_t needed = k;
      for (std::uint64_t i = 0; i < total && needed > 0; ++i) {
        if (uniform01(eng) * static_cast<double>(total - i) < static_cast<double>(needed)) {
          ranks.push_back(i);
          --needed;
        }
      }
    } else {
      // Floyd's algorithm: k distinct values from [0, total).
      std::unordered_set<std::uint64_t> chosen;
      chosen.reserve(static_cast<std::size_t>(k) * 2);
      for (std::uint64_t j = total - k; j < total; ++j) {
        std::uniform_int_distribution<std::uint64_t> pick(0, j);
        const std::uint64_t t = pick(eng);
        if (!chosen.insert(t).second) chosen.insert(j);
      }
      ranks.assign(chosen.begin(), chosen.end());
      std::sort(ranks.begin(), ranks.end());
    }
    edges.reserve(ranks.size());
    for (auto rk : ranks) edges.push_back(unrank_copy(*copies, n, rk));
  } else {
    std::vector<int> subset(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) subset[static_cast<std::size_t>(i)] = i;
    const auto per = static_cast<std::uint32_t>(copies->count());
    do {
      for (std::uint32_t c = 0; c < per; ++c)
        if (uniform01(eng) < q) edges.push_back(HyperEdge{subset, c});
    } while (next_combination_colex(subset, n));
  }
  return FHypergraph(n, std::move(copies), std::move(edges), q);
}

FHypergraph sample_fgraph(const Pattern& pattern, int n, double q, const Seed& seed,
                          SamplerPath path) {
  return sample_fgraph(std::make_shared<const LabeledCopySet>(pattern), n, q, seed, path);
}

FHypergraph couple_to_kr(const FHypergraph& h) {
  auto kr = std::make_shared<const LabeledCopySet>(Pattern::complete(h.r()));
  std::vector<HyperEdge> out;
  for (const auto& e : h.hyperedges())
    if (out.empty() || out.back().vertices != e.vertices) out.push_back(HyperEdge{e.vertices, 0});
  return FHypergraph(h.n(), std::move(kr), std::move(out), h.q());
}

std::string serialize(const FHypergraph& h) {
  std::ostringstream out;
  out << h.n() << ' ' << h.size() << '\n';
  for (const auto& e : h.hyperedges()) {
    for (int v : e.vertices) out << v << ' ';
    out << e.copy << '\n';
  }
  return out.str();
}

FHypergraph parse_hypergraph(std::string_view text, std::shared_ptr<const LabeledCopySet> copies) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError(1, "empty hypergraph file");
  long long n = 0;
  long long m = 0;
  {
    std::istringstream ls(line);
    std::string extra;
    if (!(ls >> n >> m) || (ls >> extra) || n < 1 || m < 0)
      throw ParseError(lineno, "expected header \"n m\"");
  }
  const int r = copies->pattern().r();
  std::vector<HyperEdge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (long long i = 0; i < m; ++i) {
    if (!next_line()) throw ParseError(lineno + 1, "missing hyperedge line");
    std::istringstream ls(line);
    std::vector<long long> tok;
    long long x = 0;
    while (ls >> x) tok.push_back(x);
    if (!ls.eof() || static_cast<int>(tok.size()) != r + 1)
      throw ParseError(lineno, "expected " + std::to_string(r) + " vertices and a copy index");
    HyperEdge e;
    for (int j = 0; j < r; ++j) {
      if (tok[static_cast<std::size_t>(j)] < 0 || tok[static_cast<std::size_t>(j)] >= n)
        throw ParseError(lineno, "vertex out of range");
      if (j > 0 && tok[static_cast<std::size_t>(j - 1)] >= tok[static_cast<std::size_t>(j)])
        throw ParseError(lineno, "vertices must be strictly increasing");
      e.vertices.push_back(static_cast<int>(tok[static_cast<std::size_t>(j)]));
    }
    if (tok.back() < 0 || static_cast<std::uint64_t>(tok.back()) >= copies->count())
      throw ParseError(lineno, "copy index out of range");
    e.copy = static_cast<std::uint32_t>(tok.back());
    edges.push_back(std::move(e));
  }
  if (next_line()) throw ParseError(lineno, "trailing content after declared hyperedges");
  try {
    return FHypergraph(static_cast<int>(n), std::move(copies), std::move(edges));
  } catch (const DomainError& e) {
    throw ParseError(lineno, e.what());
  }
}

}  // namespace mono

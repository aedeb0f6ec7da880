#include "mono/optimizer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mono/combinatorics.hpp"
#include "mono/error.hpp"
#include "mono/parallel.hpp"

namespace mono {
namespace {

using Clock = std::chrono::steady_clock;

std::vector<int> flatten(const std::vector<HyperEdge>& edges) {
  std::vector<int> out;
  for (const auto& e : edges) out.insert(out.end(), e.vertices.begin(), e.vertices.end());
  return out;
}

void check_length(const HyperInstance& h, const SpinConfig& sigma) {
  if (sigma.n() != h.n())
    throw DomainError("spin configuration has length " + std::to_string(sigma.n()) +
                      ", instance has " + std::to_string(h.n()) + " vertices");
}

// Incremental evaluator: per-hyperedge plus counts and the running H.
class State {
 public:
  State(const HyperInstance& h, SpinConfig sigma) : h_(&h), sigma_(std::move(sigma)) {
    plus_.assign(h.size(), 0);
    for (std::size_t e = 0; e < h.size(); ++e) {
      int pc = 0;
      for (int v : h.edge(e)) pc += sigma_[v] == 1;
      plus_[e] = static_cast<std::uint8_t>(pc);
      value_ += mono(pc);
    }
  }

  std::int64_t value() const noexcept { return value_; }
  const SpinConfig& sigma() const noexcept { return sigma_; }

  std::int64_t delta(int v) const {
    const int step = sigma_[v] == 1 ? -1 : 1;
    std::int64_t d = 0;
    for (auto e : h_->incident(v)) {
      const int pc = plus_[e];
      d += mono(pc + step) - mono(pc);
    }
    return d;
  }

  void flip(int v) {
    const int step = sigma_[v] == 1 ? -1 : 1;
    for (auto e : h_->incident(v)) {
      const int pc = plus_[e];
      value_ += mono(pc + step) - mono(pc);
      plus_[e] = static_cast<std::uint8_t>(pc + step);
    }
    sigma_.flip(v);
  }

 private:
  int mono(int pc) const noexcept { return pc == 0 || pc == h_->r(); }

  const HyperInstance* h_;
  SpinConfig sigma_;
  std::vector<std::uint8_t> plus_;
  std::int64_t value_ = 0;
};

SpinConfig config_with_plus(int n, int k, Engine& eng) {
  std::vector<std::int8_t> s(static_cast<std::size_t>(n), -1);
  std::fill(s.begin(), s.begin() + k, 1);
  for (std::size_t i = s.size(); i > 1; --i) {
    std::uniform_int_distribution<std::size_t> pick(0, i - 1);
    std::swap(s[i - 1], s[pick(eng)]);
  }
  return SpinConfig(std::move(s));
}

SpinConfig random_config(int n, Engine& eng) {
  std::vector<std::int8_t> s(static_cast<std::size_t>(n));
  for (auto& x : s) x = (eng() >> 63) ? 1 : -1;
  return SpinConfig(std::move(s));
}

bool better(const OptResult& a, const OptResult& b) {
  if (a.best_value != b.best_value) return a.best_value < b.best_value;
  return a.best_sigma < b.best_sigma;
}

void audit(const HyperInstance& h, const OptResult& r) {
  if (hamiltonian(h, r.best_sigma) != r.best_value)
    throw std::logic_error("optimizer drift: reported value differs from recomputed H");
}

std::vector<int> band_slices(int n, const MagnetizationBand& band) {
  std::vector<int> ks;
  for (int k = std::max(0, band.min_plus); k <= std::min(n, band.max_plus); ++k) ks.push_back(k);
  if (ks.empty()) throw DomainError("magnetization band contains no feasible plus count");
  return ks;
}

}  // namespace

HyperInstance::HyperInstance(int n, int r, std::vector<int> members)
    : n_(n), r_(r), members_(std::move(members)) {
  if (r_ < 1 || n_ < 1) throw DomainError("instance needs n >= 1 and r >= 1");
  if (members_.size() % static_cast<std::size_t>(r_) != 0)
    throw DomainError("member list length is not a multiple of r");
  if (r_ > 255) throw CapabilityError("hyperedge arity above 255");
  m_ = members_.size() / static_cast<std::size_t>(r_);
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (int v : members_) {
    if (v < 0 || v >= n_) throw DomainError("hyperedge vertex out of range");
    ++offsets_[static_cast<std::size_t>(v) + 1];
  }
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  incidence_.resize(members_.size());
  auto fill = offsets_;
  for (std::size_t e = 0; e < m_; ++e) {
    auto verts = edge(e);
    for (std::size_t i = 0; i < verts.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (verts[i] == verts[j]) throw DomainError("hyperedge repeats a vertex");
      incidence_[fill[static_cast<std::size_t>(verts[i])]++] = static_cast<std::uint32_t>(e);
    }
  }
}

HyperInstance::HyperInstance(const FHypergraph& h)
    : HyperInstance(h.n(), h.r(), flatten(h.hyperedges())) {}

HyperInstance::HyperInstance(const CopyList& c)
    : HyperInstance(c.n(), c.pattern().r(), flatten(c.copies())) {}

std::span<const std::uint32_t> HyperInstance::incident(int v) const {
  const auto b = offsets_[static_cast<std::size_t>(v)];
  const auto e = offsets_[static_cast<std::size_t>(v) + 1];
  return std::span<const std::uint32_t>(incidence_).subspan(b, e - b);
}

MagnetizationBand MagnetizationBand::balanced(int n) { return {n / 2, (n + 1) / 2}; }

MagnetizationBand MagnetizationBand::from_h0(int n, double h0) {
  if (!(h0 >= 0.0)) throw DomainError("h0 must be non-negative");
  // |2k - n| <= h0 n
  const double slack = h0 * n;
  const int lo = static_cast<int>(std::ceil((n - slack) / 2.0 - 1e-9));
  const int hi = static_cast<int>(std::floor((n + slack) / 2.0 + 1e-9));
  return {std::max(0, lo), std::min(n, hi)};
}

std::string to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::anneal: return "anneal";
    case Method::swap_anneal: return "swap-anneal";
  }
  return "?";
}

std::int64_t hamiltonian(const HyperInstance& h, const SpinConfig& sigma) {
  check_length(h, sigma);
  std::int64_t count = 0;
  for (std::size_t e = 0; e < h.size(); ++e) {
    auto verts = h.edge(e);
    const int first = sigma[verts[0]];
    count += std::all_of(verts.begin(), verts.end(), [&](int v) { return sigma[v] == first; });
  }
  return count;
}

std::int64_t cut_value(const HyperInstance& h, const SpinConfig& sigma) {
  return static_cast<std::int64_t>(h.size()) - hamiltonian(h, sigma);
}

std::int64_t cut_value(const FHypergraph& h, const SpinConfig& sigma) {
  return static_cast<std::int64_t>(h.size()) - hamiltonian(h, sigma);
}

std::int64_t flip_delta(const HyperInstance& h, const SpinConfig& sigma, int v) {
  check_length(h, sigma);
  if (v < 0 || v >= h.n()) throw DomainError("vertex out of range");
  const int s = sigma[v];
  std::int64_t d = 0;
  for (auto e : h.incident(v)) {
    bool before = true;  // all equal to s
    bool after = true;   // all others equal to -s
    for (int u : h.edge(e)) {
      if (u == v) continue;
      before = before && sigma[u] == s;
      after = after && sigma[u] == -s;
    }
    d += static_cast<int>(after) - static_cast<int>(before);
  }
  return d;
}

HyperInstance edge_triangle_instance(int n) {
  if (n < 3) throw DomainError("edge_triangle_instance needs n >= 3");
  auto id = [](int a, int b) { return static_cast<int>(binomial(b, 2)) + a; };  // a < b
  std::vector<int> members;
  for (int c = 2; c < n; ++c)
    for (int b = 1; b < c; ++b)
      for (int a = 0; a < b; ++a) {
        members.push_back(id(a, b));
        members.push_back(id(a, c));
        members.push_back(id(b, c));
      }
  return HyperInstance(static_cast<int>(binomial(n, 2)), 3, std::move(members));
}

OptResult minimize_exact(const HyperInstance& h, const std::optional<MagnetizationBand>& band) {
  const auto start = Clock::now();
  const int n = h.n();
  OptResult res;
  res.method = Method::exact;
  res.certified = true;

  if (!band) {
    if (n > kMaxExactVertices)
      throw CapabilityError("exact minimisation limited to n <= " +
                            std::to_string(kMaxExactVertices) + " (got " + std::to_string(n) + ")");
    // sigma and -sigma have equal H, so pin vertex n-1 to -1 and walk a
    // reflected Gray code over the other n-1 spins.
    State st(h, SpinConfig::from_mask(n, 0));
    std::int64_t best = st.value();
    std::uint64_t best_mask = 0;
    const std::uint64_t count = std::uint64_t{1} << (n - 1);
    for (std::uint64_t i = 1; i < count; ++i) {
      st.flip(std::countr_zero(i));
      if (st.value() < best) {
        best = st.value();
        best_mask = i ^ (i >> 1);
      }
    }
    res.evaluations = count;
    res.best_sigma = SpinConfig::from_mask(n, best_mask);
    res.best_value = best;
  } else {
    const auto ks = band_slices(n, *band);
    std::uint64_t total = 0;
    for (int k : ks) total += binomial(n, k);
    if (n > 63 || total > kMaxExactSliceConfigs)
      throw CapabilityError("constrained exact search would visit " + std::to_string(total) +
                            " configurations (limit " + std::to_string(kMaxExactSliceConfigs) + ")");
    bool have = false;
    for (int k : ks) {
      std::uint64_t mask = k == 0 ? 0 : (std::uint64_t{1} << k) - 1;
      State st(h, SpinConfig::from_mask(n, mask));
      const std::uint64_t slice = binomial(n, k);
      for (std::uint64_t idx = 0;; ++idx) {
        if (!have || st.value() < res.best_value) {
          have = true;
          res.best_value = st.value();
          res.best_sigma = st.sigma();
        }
        ++res.evaluations;
        if (idx + 1 == slice) break;
        // Gosper's hack: next mask with the same popcount.
        const std::uint64_t c = mask & (~mask + 1);
        const std::uint64_t r = mask + c;
        const std::uint64_t next = (((r ^ mask) >> 2) / c) | r;
        for (std::uint64_t diff = mask ^ next; diff != 0; diff &= diff - 1)
          st.flip(std::countr_zero(diff));
        mask = next;
      }
    }
  }
  res.wall_time = Clock::now() - start;
  audit(h, res);
  return res;
}

namespace {

double calibrate_temperature(const HyperInstance& h, const AnnealConfig& cfg) {
  if (cfg.initial_temperature > 0.0) return cfg.initial_temperature;
  Engine eng = make_engine(cfg.seed.child(0xca11b7a7e));
  SpinConfig sigma = random_config(h.n(), eng);
  State st(h, sigma);
  std::uniform_int_distribution<int> pick(0, h.n() - 1);
  double total = 0.0;
  for (int i = 0; i < 100; ++i) total += static_cast<double>(std::llabs(st.delta(pick(eng))));
  const double mean = total / 100.0;
  return mean > 0.0 ? 2.0 * mean : 1.0;
}

// Steepest descent on single flips; ties go to the lowest vertex.
void descend_flips(State& st, int n, std::uint64_t& evals) {
  for (;;) {
    std::int64_t best = 0;
    int arg = -1;
    for (int v = 0; v < n; ++v) {
      const std::int64_t d = st.delta(v);
      ++evals;
      if (d < best) {
        best = d;
        arg = v;
      }
    }
    if (arg < 0) return;
    st.flip(arg);
  }
}

// Steepest descent on (+,-) swaps; ties go to the lowest (plus, minus) pair.
void descend_swaps(State& st, int n, std::uint64_t& evals) {
  for (;;) {
    std::int64_t best = 0;
    int best_u = -1;
    int best_w = -1;
    for (int u = 0; u < n; ++u) {
      if (st.sigma()[u] != 1) continue;
      const std::int64_t du = st.delta(u);
      st.flip(u);
      for (int w = 0; w < n; ++w) {
        if (w == u || st.sigma()[w] != -1) continue;
        const std::int64_t d = du + st.delta(w);
        ++evals;
        if (d < best) {
          best = d;
          best_u = u;
          best_w = w;
        }
      }
      st.flip(u);
    }
    if (best_u < 0) return;
    st.flip(best_u);
    st.flip(best_w);
  }
}

OptResult anneal_once(const HyperInstance& h, const AnnealConfig& cfg, double t0,
                      const std::optional<std::vector<int>>& slices, std::uint64_t restart) {
  const int n = h.n();
  Engine eng = make_engine(cfg.seed.child(restart));
  OptResult res;
  res.method = slices ? Method::swap_anneal : Method::anneal;

  SpinConfig init;
  if (slices) {
    std::uniform_int_distribution<std::size_t> pick_k(0, slices->size() - 1);
    init = config_with_plus(n, (*slices)[pick_k(eng)], eng);
  } else {
    init = random_config(n, eng);
  }
  State st(h, std::move(init));
  std::int64_t best = st.value();
  SpinConfig best_sigma = st.sigma();
  const std::int64_t steps = cfg.steps_per_restart > 0 ? cfg.steps_per_restart : 200LL * n;
  double temp = t0;

  auto maybe_record = [&] {
    if (st.value() < best) {
      best = st.value();
      best_sigma = st.sigma();
    }
  };

  if (!slices) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (std::int64_t s = 0; s < steps && best > 0; ++s) {
      const int v = pick(eng);
      const std::int64_t d = st.delta(v);
      ++res.evaluations;
      if (d <= 0 || uniform01(eng) < std::exp(-static_cast<double>(d) / temp)) {
        st.flip(v);
        if (d < 0) maybe_record();
      }
      temp *= cfg.cooling_ratio;
    }
    State polished(h, best_sigma);
    descend_flips(polished, n, res.evaluations);
    st = std::move(polished);
  } else {
    // Position-indexed plus/minus lists so a random swap is O(1) to draw.
    std::vector<int> plus;
    std::vector<int> minus;
    std::vector<std::size_t> where(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
      auto& list = st.sigma()[v] == 1 ? plus : minus;
      where[static_cast<std::size_t>(v)] = list.size();
      list.push_back(v);
    }
    if (!plus.empty() && !minus.empty()) {
      std::uniform_int_distribution<std::size_t> pick_p(0, plus.size() - 1);
      std::uniform_int_distribution<std::size_t> pick_m(0, minus.size() - 1);
      for (std::int64_t s = 0; s < steps && best > 0; ++s) {
        const int u = plus[pick_p(eng)];
        const int w = minus[pick_m(eng)];
        const std::int64_t du = st.delta(u);
        st.flip(u);
        const std::int64_t d = du + st.delta(w);
        ++res.evaluations;
        if (d <= 0 || uniform01(eng) < std::exp(-static_cast<double>(d) / temp)) {
          st.flip(w);
          std::swap(plus[where[static_cast<std::size_t>(u)]], minus[where[static_cast<std::size_t>(w)]]);
          std::swap(where[static_cast<std::size_t>(u)], where[static_cast<std::size_t>(w)]);
          if (d < 0) maybe_record();
        } else {
          st.flip(u);
        }
        temp *= cfg.cooling_ratio;
      }
    }
    State polished(h, best_sigma);
    descend_swaps(polished, n, res.evaluations);
    st = std::move(polished);
  }
  res.best_value = st.value();
  res.best_sigma = st.sigma();
  return res;
}

}  // namespace

OptResult minimize_anneal(const HyperInstance& h, const AnnealConfig& cfg,
                          const std::optional<MagnetizationBand>& band) {
  if (!(cfg.cooling_ratio > 0.0 && cfg.cooling_ratio < 1.0))
    throw DomainError("cooling ratio must lie in (0, 1)");
  if (cfg.restarts < 1) throw DomainError("restarts must be at least 1");
  if (cfg.steps_per_restart < 0) throw DomainError("steps must be positive");
  const auto start = Clock::now();
  std::optional<std::vector<int>> slices;
  if (band) slices = band_slices(h.n(), *band);

  OptResult merged;
  merged.method = band ? Method::swap_anneal : Method::anneal;
  if (h.size() == 0) {
    Engine eng = make_engine(cfg.seed);
    merged.best_sigma = slices ? config_with_plus(h.n(), slices->front(), eng)
                               : SpinConfig::all_plus(h.n());
    merged.best_value = 0;
    merged.wall_time = Clock::now() - start;
    return merged;
  }

  const double t0 = calibrate_temperature(h, cfg);
  std::vector<OptResult> runs(static_cast<std::size_t>(cfg.restarts));
  parallel_for(runs.size(), cfg.threads,
               [&](std::size_t i) { runs[i] = anneal_once(h, cfg, t0, slices, i); });

  merged = runs.front();
  for (const auto& r : runs) {
    if (better(r, merged)) {
      const auto evals = merged.evaluations;
      merged = r;
      merged.evaluations = evals;
    }
  }
  merged.evaluations = 0;
  for (const auto& r : runs) merged.evaluations += r.evaluations;
  merged.method = band ? Method::swap_anneal : Method::anneal;
  merged.certified = false;
  merged.wall_time = Clock::now() - start;
  audit(h, merged);
  return merged;
}

}  // namespace mono

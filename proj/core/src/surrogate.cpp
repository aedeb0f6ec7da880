#include "mono/surrogate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "mono/combinatorics.hpp"
#include "mono/error.hpp"
#include "mono/optimizer.hpp"
#include "mono/parallel.hpp"
#include "mono/subgraph.hpp"

namespace mono {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_dims(int n, int r) {
  if (r < 2) throw DomainError("surrogate field needs r >= 2");
  if (n < 1) throw DomainError("surrogate field needs n >= 1");
}

// Row-major C(x, k) for x < rows, k <= cols - 1.
class BinomialGrid {
 public:
  BinomialGrid(int rows, int max_k) : cols_(max_k + 1) {
    table_.resize(static_cast<std::size_t>(rows + 1) * static_cast<std::size_t>(cols_));
    for (int x = 0; x <= rows; ++x)
      for (int k = 0; k <= max_k; ++k)
        table_[static_cast<std::size_t>(x) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(k)] =
            binomial(x, k);
  }
  std::uint64_t operator()(int x, int k) const {
    return table_[static_cast<std::size_t>(x) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(k)];
  }

 private:
  int cols_;
  std::vector<std::uint64_t> table_;
};

const BinomialGrid& grid_for(int n, int r) {
  thread_local int cached_n = -1;
  thread_local int cached_r = -1;
  thread_local std::unique_ptr<BinomialGrid> grid;
  if (cached_n != n || cached_r != r) {
    grid = std::make_unique<BinomialGrid>(n, r);
    cached_n = n;
    cached_r = r;
  }
  return *grid;
}

}  // namespace

void for_each_multiset(int n, int r, const std::function<void(std::span<const int>, std::size_t)>& fn) {
  std::vector<int> combo(static_cast<std::size_t>(r));
  std::vector<int> tuple(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) combo[static_cast<std::size_t>(i)] = i;
  std::size_t rank = 0;
  do {
    for (int i = 0; i < r; ++i)
      tuple[static_cast<std::size_t>(i)] = combo[static_cast<std::size_t>(i)] - i;
    fn(tuple, rank++);
  } while (next_combination_colex(combo, n + r - 1));
}

std::size_t multiset_rank(std::span<const int> t) {
  std::size_t rank = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    rank += binomial(t[i] + static_cast<int>(i), static_cast<int>(i) + 1);
  return rank;
}

double g_factor(std::span<const int> t) {
  double orderings = static_cast<double>(factorial(static_cast<int>(t.size())));
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    orderings /= static_cast<double>(factorial(static_cast<int>(j - i)));
    i = j;
  }
  return std::sqrt(orderings);
}

GaussianField::GaussianField(int n, int r, std::vector<double> values, Seed seed)
    : n_(n), r_(r), values_(std::move(values)), seed_(seed) {
  check_dims(n, r);
  if (values_.size() != binomial(n + r - 1, r))
    throw DomainError("field needs C(n + r - 1, r) entries");
}

GaussianField GaussianField::sample(int n, int r, const Seed& seed) {
  check_dims(n, r);
  Engine eng = make_engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> v(binomial(n + r - 1, r));
  for (auto& x : v) x = normal(eng);
  return GaussianField(n, r, std::move(v), seed);
}

double GaussianField::at(std::span<const int> tuple) const {
  std::vector<int> t(tuple.begin(), tuple.end());
  std::sort(t.begin(), t.end());
  return values_[multiset_rank(t)];
}

void GaussianField::set(std::span<const int> tuple, double value) {
  std::vector<int> t(tuple.begin(), tuple.end());
  std::sort(t.begin(), t.end());
  values_[multiset_rank(t)] = value;
}

GaussianField GaussianField::negated() const {
  GaussianField out = *this;
  for (auto& x : out.values_) x = -x;
  return out;
}

SupportWeights::SupportWeights(const GaussianField& field)
    : n_(field.n()),
      r_(field.r()),
      sqrt_rfact_(std::sqrt(static_cast<double>(factorial(field.r())))),
      two_pow_(std::ldexp(1.0, field.r() - 1)) {
  w_.resize(static_cast<std::size_t>(r_) + 1);
  for (int k = 1; k <= r_; ++k) w_[static_cast<std::size_t>(k)].assign(binomial(n_, k), 0.0);
  const auto values = field.values();
  std::vector<int> support;
  for_each_multiset(n_, r_, [&](std::span<const int> t, std::size_t rank) {
    support.assign(t.begin(), t.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    const double gj = g_factor(t) * values[rank];
    w_[support.size()][colex_rank(support)] += gj;
    total_ += gj;
  });
}

double SupportWeights::weight(std::span<const int> sorted_support) const {
  if (sorted_support.empty() || static_cast<int>(sorted_support.size()) > r_) return 0.0;
  return w_[sorted_support.size()][colex_rank(sorted_support)];
}

double SupportWeights::side_sum(std::span<const int> side) const {
  const auto& binom = grid_for(n_, r_);
  double sum = 0.0;
  // DFS over increasing index chains; depth = subset size, rank built
  // incrementally as sum C(x_i, i + 1).
  auto dfs = [&](auto&& self, std::size_t from, int depth, std::uint64_t rank) -> void {
    for (std::size_t j = from; j < side.size(); ++j) {
      const std::uint64_t next = rank + binom(side[j], depth + 1);
      sum += w_[static_cast<std::size_t>(depth) + 1][next];
      if (depth + 1 < r_) self(self, j + 1, depth + 1, next);
    }
  };
  dfs(dfs, 0, 0, 0);
  return sum;
}

double SupportWeights::contribution(int v, std::span<const int> others) const {
  const auto& binom = grid_for(n_, r_);
  double sum = 0.0;
  // Subsets Q of `others` with |Q| <= r - 1, merged with v. Elements of Q
  // below v keep their position; those above shift up by one.
  std::vector<int> chosen;
  auto rank_with_v = [&]() {
    std::uint64_t rank = 0;
    std::size_t pos = 0;
    bool placed = false;
    for (int x : chosen) {
      if (!placed && x > v) {
        rank += binom(v, static_cast<int>(pos) + 1);
        ++pos;
        placed = true;
      }
      rank += binom(x, static_cast<int>(pos) + 1);
      ++pos;
    }
    if (!placed) rank += binom(v, static_cast<int>(pos) + 1);
    return rank;
  };
  auto dfs = [&](auto&& self, std::size_t from) -> void {
    sum += w_[chosen.size() + 1][rank_with_v()];
    if (static_cast<int>(chosen.size()) + 1 >= r_) return;
    for (std::size_t j = from; j < others.size(); ++j) {
      chosen.push_back(others[j]);
      self(self, j + 1);
      chosen.pop_back();
    }
  };
  dfs(dfs, 0);
  return sum;
}

double SupportWeights::u_from_sides(double plus_sum, double minus_sum) const {
  return sqrt_rfact_ * (two_pow_ * (plus_sum + minus_sum) - total_);
}

double u_field(const SupportWeights& weights, const SpinConfig& sigma) {
  if (sigma.n() != weights.n()) throw DomainError("spin configuration length differs from field n");
  std::vector<int> plus;
  std::vector<int> minus;
  for (int i = 0; i < sigma.n(); ++i) (sigma[i] == 1 ? plus : minus).push_back(i);
  return weights.u_from_sides(weights.side_sum(plus), weights.side_sum(minus));
}

double u_field(const GaussianField& field, const SpinConfig& sigma) {
  return u_field(SupportWeights(field), sigma);
}

double u_field_naive(const GaussianField& field, const SpinConfig& sigma) {
  if (sigma.n() != field.n()) throw DomainError("spin configuration length differs from field n");
  const double sqrt_rfact = std::sqrt(static_cast<double>(factorial(field.r())));
  const auto values = field.values();
  std::vector<int> x(static_cast<std::size_t>(field.r()));
  double sum = 0.0;
  for_each_multiset(field.n(), field.r(), [&](std::span<const int> t, std::size_t rank) {
    for (std::size_t i = 0; i < t.size(); ++i) x[i] = sigma[t[i]];
    sum += sqrt_rfact * g_factor(t) * values[rank] * static_cast<double>(f_poly(x));
  });
  return sum;
}

BigInt exact_covariance(const SpinConfig& x, const SpinConfig& y, int r) {
  if (x.n() != y.n()) throw DomainError("configurations differ in length");
  if (r < 2) throw DomainError("exact_covariance needs r >= 2");
  long long pp = 0, pm = 0, mp = 0, mm = 0;
  for (int i = 0; i < x.n(); ++i) {
    if (x[i] == 1) (y[i] == 1 ? pp : pm)++;
    else (y[i] == 1 ? mp : mm)++;
  }
  const auto ur = static_cast<unsigned>(r);
  auto pw = [&](long long a) -> BigInt { return pow(BigInt(a), ur); };
  const BigInt two = BigInt(1) << (r - 1);
  const BigInt four = two * two;
  return four * (pw(pp) + pw(pm) + pw(mp) + pw(mm)) - two * (pw(pp + pm) + pw(mp + mm)) -
         two * (pw(pp + mp) + pw(pm + mm)) + pw(x.n());
}

double w_norm(double u_value, int n, int r) {
  check_dims(n, r);
  const double scale = std::sqrt(static_cast<double>(factorial(r))) *
                       std::pow(static_cast<double>(n), (r + 1) / 2.0) *
                       std::sqrt(std::ldexp(1.0, r - 1) - 1.0);
  return u_value / scale;
}

SurrogateConstants SurrogateConstants::make(const Pattern& p, double c) {
  const double aut = static_cast<double>(p.aut_count());
  const int r = p.r();
  SurrogateConstants k{};
  k.kappa1 = -1.0 / (aut * std::ldexp(1.0, r - 1));
  k.kappa2 = 1.0 / (std::ldexp(1.0, 2 * r - 2) * static_cast<double>(factorial(r)) * aut);
  k.d = std::pow(c, p.s());
  k.kappa = k.d / (std::ldexp(1.0, r - 1) * aut);
  return k;
}

double alpha_of_magnetization(double kappa1, const Rational& h, int r) {
  const auto ur = static_cast<unsigned>(r);
  const Rational poly = (rpow(1 + h, ur) + rpow(1 - h, ur) - 2) / 2;
  return kappa1 * to_double(poly);
}

namespace {

// Depth-first walk over spin assignments of vertices n-1, n-2, ..., 0,
// keeping for each side X the partial sums
//   R_X[m](Q) = sum of w(T) over T containing Q with T \ Q inside X,
// for subsets Q of the still-unassigned prefix {0..v}, indexed by colex
// rank. Assigning v to X maps R_X[m](Q) -> R_X[m](Q) + R_X[m+1](Q u {v}),
// and Q u {v} has rank rank(Q) + C(v, m+1), so each update is a pair of
// contiguous array slices. R_X[0] is S(X).
class SliceMaximizer {
 public:
  SliceMaximizer(const SupportWeights& w, int lo, int hi)
      : w_(w), n_(w.n()), r_(w.r()), lo_(lo), hi_(hi) {
    offsets_.resize(static_cast<std::size_t>(r_) + 1);
    std::size_t off = 0;
    for (int m = 0; m < r_; ++m) {
      offsets_[static_cast<std::size_t>(m)] = off;
      off += binomial(n_, m);
    }
    offsets_[static_cast<std::size_t>(r_)] = off;
    stride_ = off;
    for (auto& side : buffers_) side.assign(stride_ * static_cast<std::size_t>(n_ + 1), 0.0);
    for (auto& side : buffers_) {
      for (int m = 1; m < r_; ++m) {
        const auto src = w_.by_size(m);
        std::copy(src.begin(), src.end(), side.begin() + static_cast<std::ptrdiff_t>(offsets_[static_cast<std::size_t>(m)]));
      }
    }
    best_.assign(static_cast<std::size_t>(n_) + 1, kNegInf);
    best_mask_.assign(static_cast<std::size_t>(n_) + 1, 0);
    binom_.resize(static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(r_ + 1));
    for (int x = 0; x <= n_; ++x)
      for (int k = 0; k <= r_; ++k) binom_[static_cast<std::size_t>(x * (r_ + 1) + k)] = binomial(x, k);
  }

  void run() {
    // sigma_{n-1} = +1; the mirror images are recovered by negation.
    const double* a0 = buffers_[0].data();
    const double* b0 = buffers_[1].data();
    descend(n_ - 1, a0, b0, 0, 0, 0, 0);
  }

  const std::vector<double>& best() const { return best_; }
  const std::vector<std::uint64_t>& best_mask() const { return best_mask_; }
  std::uint64_t leaves() const { return leaves_; }

 private:
  std::uint64_t binom(int x, int k) const {
    return binom_[static_cast<std::size_t>(x * (r_ + 1) + k)];
  }

  // Child arrays for "v joins the side whose arrays are `parent`".
  void extend(int v, const double* parent, double* child) const {
    const auto wr = w_.by_size(r_);
    for (int m = 0; m < r_; ++m) {
      const std::size_t len = binom(v, m);
      const std::size_t shift = binom(v, m + 1);
      const double* src = parent + offsets_[static_cast<std::size_t>(m)];
      const double* up = (m + 1 < r_) ? parent + offsets_[static_cast<std::size_t>(m) + 1] + shift
                                      : wr.data() + shift;
      double* dst = child + offsets_[static_cast<std::size_t>(m)];
      for (std::size_t q = 0; q < len; ++q) dst[q] = src[q] + up[q];
    }
  }

  void descend(int v, const double* a, const double* b, int na, int nb, int level,
               std::uint64_t mask) {
    if (v < 0) {
      ++leaves_;
      const double u = w_.u_from_sides(a[0], b[0]);
      auto& slot = best_[static_cast<std::size_t>(na)];
      if (u > slot) {
        slot = u;
        best_mask_[static_cast<std::size_t>(na)] = mask;
      }
      return;
    }
    const int remaining = v + 1;
    const bool first = (v == n_ - 1);
    double* next_a = buffers_[0].data() + stride_ * static_cast<std::size_t>(level + 1);
    double* next_b = buffers_[1].data() + stride_ * static_cast<std::size_t>(level + 1);
    // v -> plus side
    if (na + 1 <= hi_ && na + remaining >= lo_ && nb + (remaining - 1) >= n_ - hi_) {
      extend(v, a, next_a);
      descend(v - 1, next_a, b, na + 1, nb, level + 1, mask | (std::uint64_t{1} << v));
    }
    // v -> minus side
    if (!first && nb + 1 <= n_ - lo_ && nb + remaining >= n_ - hi_ && na + (remaining - 1) >= lo_) {
      extend(v, b, next_b);
      descend(v - 1, a, next_b, na, nb + 1, level + 1, mask);
    }
  }

  const SupportWeights& w_;
  int n_;
  int r_;
  int lo_;
  int hi_;
  std::vector<std::size_t> offsets_;
  std::size_t stride_ = 0;
  std::vector<double> buffers_[2];
  std::vector<double> best_;
  std::vector<std::uint64_t> best_mask_;
  std::vector<std::uint64_t> binom_;
  std::uint64_t leaves_ = 0;
};

// Swap annealing for max U inside slice k.
std::pair<double, SpinConfig> anneal_slice(const SupportWeights& w, int k, const SliceSearchConfig& cfg,
                                           std::uint64_t stream) {
  const int n = w.n();
  Engine eng = make_engine(cfg.seed.child(stream));
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;

  auto side_lists = [&](const std::vector<std::int8_t>& s, std::vector<int>& plus, std::vector<int>& minus) {
    plus.clear();
    minus.clear();
    for (int i = 0; i < n; ++i) (s[static_cast<std::size_t>(i)] == 1 ? plus : minus).push_back(i);
  };
  auto without = [](const std::vector<int>& xs, int v) {
    std::vector<int> out;
    out.reserve(xs.size());
    for (int x : xs)
      if (x != v) out.push_back(x);
    return out;
  };
  // (Delta S_plus, Delta S_minus) for swapping a (plus) with b (minus).
  auto swap_delta = [&](const std::vector<int>& plus, const std::vector<int>& minus, int a, int b) {
    const auto pa = without(plus, a);
    const auto mb = without(minus, b);
    const double dp = -w.contribution(a, pa) + w.contribution(b, pa);
    const double dm = -w.contribution(b, mb) + w.contribution(a, mb);
    return std::pair{dp, dm};
  };

  double best_u = kNegInf;
  std::vector<std::int8_t> best_s;
  if (k == 0 || k == n) {
    std::vector<std::int8_t> s(static_cast<std::size_t>(n), k == n ? 1 : -1);
    SpinConfig cfg_s(s);
    return {u_field(w, cfg_s), cfg_s};
  }
  const std::int64_t steps = cfg.steps > 0 ? cfg.steps : 100LL * n;
  for (int rs = 0; rs < std::max(1, cfg.restarts); ++rs) {
    std::shuffle(perm.begin(), perm.end(), eng);
    std::vector<std::int8_t> s(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < k; ++i) s[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = 1;
    std::vector<int> plus;
    std::vector<int> minus;
    side_lists(s, plus, minus);
    double sp = w.side_sum(plus);
    double sm = w.side_sum(minus);
    auto current = [&] { return w.u_from_sides(sp, sm); };
    double cur = current();
    double local_best = cur;
    std::vector<std::int8_t> local_s = s;

    // Temperature from the spread of 20 random swap deltas, cooled
    // geometrically to 1e-3 of its start over the run.
    std::uniform_int_distribution<std::size_t> pp(0, plus.size() - 1);
    std::uniform_int_distribution<std::size_t> pm(0, minus.size() - 1);
    double spread = 0.0;
    for (int i = 0; i < 20; ++i) {
      const auto [dp, dm] = swap_delta(plus, minus, plus[pp(eng)], minus[pm(eng)]);
      spread += std::abs(w.u_from_sides(sp + dp, sm + dm) - cur);
    }
    double temp = std::max(spread / 20.0, 1e-12);
    const double cool = std::exp(std::log(1e-3) / static_cast<double>(steps));

    for (std::int64_t step = 0; step < steps; ++step) {
      const std::size_t ia = pp(eng);
      const std::size_t ib = pm(eng);
      const int a = plus[ia];
      const int b = minus[ib];
      const auto [dp, dm] = swap_delta(plus, minus, a, b);
      const double cand = w.u_from_sides(sp + dp, sm + dm);
      if (cand >= cur || uniform01(eng) < std::exp((cand - cur) / temp)) {
        sp += dp;
        sm += dm;
        cur = cand;
        plus[ia] = b;
        minus[ib] = a;
        std::sort(plus.begin(), plus.end());
        std::sort(minus.begin(), minus.end());
        s[static_cast<std::size_t>(a)] = -1;
        s[static_cast<std::size_t>(b)] = 1;
        if (cur > local_best) {
          local_best = cur;
          local_s = s;
        }
      }
      temp *= cool;
    }
    // Steepest ascent over swaps from the best state; recompute sums from
    // scratch first to shed accumulated rounding.
    s = local_s;
    side_lists(s, plus, minus);
    sp = w.side_sum(plus);
    sm = w.side_sum(minus);
    cur = current();
    for (;;) {
      double gain = 0.0;
      int ba = -1;
      int bb = -1;
      double bdp = 0.0;
      double bdm = 0.0;
      for (int a : plus)
        for (int b : minus) {
          const auto [dp, dm] = swap_delta(plus, minus, a, b);
          const double g = w.u_from_sides(sp + dp, sm + dm) - cur;
          if (g > gain + 1e-12 * std::max(1.0, std::abs(cur))) {
            gain = g;
            ba = a;
            bb = b;
            bdp = dp;
            bdm = dm;
          }
        }
      if (ba < 0) break;
      s[static_cast<std::size_t>(ba)] = -1;
      s[static_cast<std::size_t>(bb)] = 1;
      side_lists(s, plus, minus);
      sp += bdp;
      sm += bdm;
      cur = current();
    }
    const double final_u = u_field(w, SpinConfig(s));
    if (final_u > best_u) {
      best_u = final_u;
      best_s = s;
    }
  }
  return {best_u, SpinConfig(std::move(best_s))};
}

}  // namespace

std::vector<BucketMax> max_w_by_bucket(const GaussianField& field, double h0, const SliceSearchConfig& cfg) {
  const int n = field.n();
  const int r = field.r();
  const auto band = MagnetizationBand::from_h0(n, h0);
  if (band.min_plus > band.max_plus) throw DomainError("h0 admits no magnetization slice");
  const SupportWeights w(field);
  std::vector<BucketMax> out;

  auto make_bucket = [&](int k, double u, SpinConfig arg, bool certified) {
    BucketMax b;
    b.plus_count = k;
    b.h = Rational(2 * k - n, n);
    b.max_u = u;
    b.max_w = w_norm(u, n, r);
    b.argmax = std::move(arg);
    b.certified = certified;
    return b;
  };

  if (cfg.mode == SearchMode::exact) {
    std::uint64_t total = 0;
    for (int k = band.min_plus; k <= band.max_plus; ++k) total += binomial(n, k);
    if (n > 63 || total > kMaxExactSurrogateConfigs)
      throw CapabilityError("exact slice search would visit " + std::to_string(total) +
                            " configurations (limit " + std::to_string(kMaxExactSurrogateConfigs) + ")");
    // Slices k and n - k are mirror images; search both so negation maps
    // every requested slice onto a searched one.
    const int lo = std::min(band.min_plus, n - band.max_plus);
    const int hi = std::max(band.max_plus, n - band.min_plus);
    SliceMaximizer sm(w, lo, hi);
    sm.run();
    for (int k = band.min_plus; k <= band.max_plus; ++k) {
      const double direct = sm.best()[static_cast<std::size_t>(k)];
      const double mirror = sm.best()[static_cast<std::size_t>(n - k)];
      if (direct >= mirror) {
        out.push_back(make_bucket(k, direct, SpinConfig::from_mask(n, sm.best_mask()[static_cast<std::size_t>(k)]), true));
      } else {
        out.push_back(make_bucket(
            k, mirror, SpinConfig::from_mask(n, sm.best_mask()[static_cast<std::size_t>(n - k)]).negated(), true));
      }
    }
  } else {
    for (int k = band.min_plus; k <= band.max_plus; ++k) {
      auto [u, arg] = anneal_slice(w, k, cfg, static_cast<std::uint64_t>(k));
      out.push_back(make_bucket(k, u, std::move(arg), false));
    }
  }
  return out;
}

VnResult t_alpha_and_vn(const Pattern& pattern, int n, double c, const VnConfig& cfg) {
  if (n < pattern.r()) throw DomainError("t_alpha_and_vn needs n >= r");
  if (!(c > 0.0)) throw DomainError("c must be positive");
  if (cfg.num_fields < 1) throw DomainError("need at least one field");
  const int r = pattern.r();
  VnResult res;
  res.constants = SurrogateConstants::make(pattern, c);
  const auto& k = res.constants;
  const double t_scale = std::pow(static_cast<double>(n), -(r + 1) / 2.0) * std::sqrt(k.kappa2);
  const double sqrt_d = std::sqrt(k.d);

  res.fields.resize(static_cast<std::size_t>(cfg.num_fields));
  parallel_for(res.fields.size(), cfg.threads, [&](std::size_t i) {
    const std::uint64_t stream = cfg.antithetic ? i / 2 : i;
    const bool mirror = cfg.antithetic && (i % 2 == 1);
    GaussianField field = GaussianField::sample(n, r, cfg.seed.child(stream));
    if (mirror) field = field.negated();
    SliceSearchConfig search = cfg.search;
    search.seed = cfg.seed.child(1'000'000'007ULL + i);
    const auto maxima = max_w_by_bucket(field, cfg.h0, search);

    FieldOutcome out;
    out.field_seed = (mirror ? "-" : "") + std::to_string(stream);
    out.best_objective = kNegInf;
    for (int plus = 0; plus <= n; ++plus) {
      AlphaBucket b;
      b.plus_count = plus;
      b.h = Rational(2 * plus - n, n);
      b.alpha = alpha_of_magnetization(k.kappa1, b.h, r);
      b.t_alpha = kNegInf;
      b.objective = kNegInf;
      for (const auto& m : maxima)
        if (m.plus_count == plus) {
          b.t_alpha = t_scale * m.max_u;
          b.objective = b.alpha * k.d + b.t_alpha * sqrt_d;
        }
      if (b.objective > out.best_objective) {
        out.best_objective = b.objective;
        out.winning_alpha = b.alpha;
      }
      out.buckets.push_back(std::move(b));
    }
    res.fields[i] = std::move(out);
  });

  double sum = 0.0;
  for (std::size_t i = 0; i < res.fields.size(); ++i) {
    sum += res.fields[i].best_objective;
    res.running_mean.push_back(sum / static_cast<double>(i + 1));
    res.fitted_alpha_constant =
        std::max(res.fitted_alpha_constant, std::abs(res.fields[i].winning_alpha) * sqrt_d);
  }
  res.vn = res.running_mean.back();
  return res;
}

double predictor_from_kappa(double kappa) {
  return kappa + std::sqrt(2.0 * std::numbers::ln2 * kappa);
}

double predictor_m(const Pattern& pattern, double c) {
  if (!(c > 0.0)) throw DomainError("c must be positive");
  return predictor_from_kappa(SurrogateConstants::make(pattern, c).kappa);
}

std::pair<double, double> gauss_tail_bounds(double x) {
  if (!(x > 0.0)) throw DomainError("gauss_tail_bounds needs x > 0");
  const double phi = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return {phi * (1.0 / x - 1.0 / (x * x * x)), phi / x};
}

double slepian_joint_bound(double rho, double u) {
  if (!(rho > -1.0 && rho < 1.0)) throw DomainError("correlation must lie in (-1, 1)");
  if (!(u > 0.0)) throw DomainError("level u must be positive");
  return (1.0 + rho) * (1.0 + rho) / (2.0 * std::numbers::pi * u * u * std::sqrt(1.0 - rho * rho)) *
         std::exp(-u * u / (1.0 + rho));
}

BigInt balanced_pair_count(int n, int y) {
  if (n <= 0 || n % 4 != 0) throw DomainError("balanced_pair_count needs n divisible by 4");
  if (std::abs(y) > n / 4) throw DomainError("|y| must not exceed n / 4");
  const BigInt inner = binomial_big(n / 2, n / 4 - y);
  return binomial_big(n, n / 2) * inner * inner;
}

double log_stirling_factorial(int m) {
  if (m < 0) throw DomainError("factorial of negative number");
  if (m == 0) return 0.0;
  const double x = m;
  return 0.5 * std::log(2.0 * std::numbers::pi * x) + x * std::log(x) - x;
}

double log_balanced_pair_count_stirling(int n, int y) {
  if (n <= 0 || n % 4 != 0) throw DomainError("balanced_pair_count needs n divisible by 4");
  if (std::abs(y) > n / 4) throw DomainError("|y| must not exceed n / 4");
  // n! / ((n/4 + y)!^2 (n/4 - y)!^2)
  return log_stirling_factorial(n) - 2.0 * log_stirling_factorial(n / 4 + y) -
         2.0 * log_stirling_factorial(n / 4 - y);
}

double log_binomial(int m, int k) {
  if (k < 0 || k > m) throw DomainError("log_binomial needs 0 <= k <= m");
  return std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0);
}

double log_binomial_stirling(int m, int k) {
  if (k < 0 || k > m) throw DomainError("log_binomial needs 0 <= k <= m");
  if (k == 0 || k == m) return 0.0;
  const double beta = static_cast<double>(k) / m;
  return -0.5 * std::log(2.0 * std::numbers::pi * m * beta * (1.0 - beta)) -
         m * (beta * std::log(beta) + (1.0 - beta) * std::log(1.0 - beta));
}

}  // namespace mono

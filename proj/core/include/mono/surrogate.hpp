#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mono/pattern.hpp"
#include "mono/rational.hpp"
#include "mono/seed.hpp"
#include "mono/spin.hpp"

namespace mono {

// Calls fn(tuple, rank) for every non-decreasing r-tuple over [0, n), in
// rank order. Tuples map to r-subsets of [0, n + r - 1) via t_i + i; the
// rank is the colex rank of that subset.
void for_each_multiset(int n, int r, const std::function<void(std::span<const int>, std::size_t)>& fn);
std::size_t multiset_rank(std::span<const int> nondecreasing);

// sqrt of the number of distinct orderings of the tuple, sqrt(r! / prod m_i!).
double g_factor(std::span<const int> nondecreasing);

// Independent standard normals J indexed by non-decreasing r-tuples; the
// symmetric extension is implied by sorting the index.
class GaussianField {
 public:
  GaussianField(int n, int r, std::vector<double> values, Seed seed = {});

  static GaussianField sample(int n, int r, const Seed& seed);

  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  const Seed& seed() const noexcept { return seed_; }
  std::span<const double> values() const noexcept { return values_; }
  // Entry for any r-tuple (sorted internally).
  double at(std::span<const int> tuple) const;
  void set(std::span<const int> tuple, double value);
  GaussianField negated() const;

 private:
  int n_;
  int r_;
  std::vector<double> values_;
  Seed seed_;
};

// g * J aggregated by support: w(T) = sum over tuples whose set of distinct
// entries is T of g(t) J(t). Because f(sigma_t) depends on t only through
// whether sigma is constant on its support,
//   U(sigma) = sqrt(r!) [2^{r-1} (S(plus side) + S(minus side)) - S_total],
// with S(X) the sum of w(T) over non-empty T inside X.
class SupportWeights {
 public:
  explicit SupportWeights(const GaussianField& field);

  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  // Weights of the size-k supports indexed by colex rank, k = 1..r.
  std::span<const double> by_size(int k) const { return w_[static_cast<std::size_t>(k)]; }
  double total() const noexcept { return total_; }

  double weight(std::span<const int> sorted_support) const;
  // S(X) for a sorted vertex list.
  double side_sum(std::span<const int> sorted_side) const;
  // Sum of w(T) over supports T containing v with T \ {v} inside `others`
  // (sorted, not containing v).
  double contribution(int v, std::span<const int> others) const;
  // U from the two side sums.
  double u_from_sides(double plus_sum, double minus_sum) const;

 private:
  int n_;
  int r_;
  std::vector<std::vector<double>> w_;
  double total_ = 0.0;
  double sqrt_rfact_;
  double two_pow_;
};

// U_n(sigma) through the support decomposition.
double u_field(const GaussianField& field, const SpinConfig& sigma);
double u_field(const SupportWeights& weights, const SpinConfig& sigma);
// U_n(sigma) summed term by term with f from its subset definition.
double u_field_naive(const GaussianField& field, const SpinConfig& sigma);

// Sum over all n^r tuples of f(x_t) f(y_t), i.e. Cov(U(x), U(y)) / r!, from
// the joint sign counts n_ab.
BigInt exact_covariance(const SpinConfig& x, const SpinConfig& y, int r);

// W = U / (sqrt(r!) n^{(r+1)/2} sqrt(2^{r-1} - 1)).
double w_norm(double u_value, int n, int r);

struct SurrogateConstants {
  double kappa1;  // -1 / (aut 2^{r-1})
  double kappa2;  // 1 / (2^{2r-2} r! aut)
  double d;       // c^s
  double kappa;   // c^s / (2^{r-1} aut)

  static SurrogateConstants make(const Pattern& p, double c);
};

// alpha = kappa1 ((1+h)^r + (1-h)^r - 2) / 2 for magnetization h.
double alpha_of_magnetization(double kappa1, const Rational& h, int r);

enum class SearchMode { exact, anneal };

struct SliceSearchConfig {
  SearchMode mode = SearchMode::exact;
  int restarts = 8;
  std::int64_t steps = 0;  // per restart; 0: 100 n
  Seed seed{};
};

inline constexpr std::uint64_t kMaxExactSurrogateConfigs = 10'000'000;

struct BucketMax {
  int plus_count = 0;
  Rational h;           // magnetization (2 plus_count - n) / n
  double max_u = 0.0;
  double max_w = 0.0;
  SpinConfig argmax;
  bool certified = false;
};

// Maximum of U (and W) over each slice with |h| <= h0. Exact mode walks
// every configuration of the band (refusing more than
// kMaxExactSurrogateConfigs); anneal mode runs swap annealing per slice.
std::vector<BucketMax> max_w_by_bucket(const GaussianField& field, double h0,
                                       const SliceSearchConfig& cfg = {});
inline std::vector<BucketMax> max_w_balanced(const GaussianField& field, double h0,
                                             const SliceSearchConfig& cfg = {}) {
  return max_w_by_bucket(field, h0, cfg);
}

struct AlphaBucket {
  int plus_count = 0;
  Rational h;
  double alpha = 0.0;
  double t_alpha = 0.0;    // -inf when the bucket was not searched
  double objective = 0.0;  // alpha d + T sqrt(d)
};

struct FieldOutcome {
  std::string field_seed;  // "<stream>", or "-<stream>" for the antithetic mirror
  std::vector<AlphaBucket> buckets;
  double best_objective = 0.0;
  double winning_alpha = 0.0;
};

struct VnConfig {
  int num_fields = 64;
  double h0 = 0.1;
  bool antithetic = true;
  SliceSearchConfig search{};
  Seed seed{};
  unsigned threads = 1;
};

struct VnResult {
  SurrogateConstants constants{};
  std::vector<FieldOutcome> fields;
  std::vector<double> running_mean;  // V_n estimate after each field
  double vn = 0.0;
  // max over fields of |alpha_win| sqrt(d): empirical constant in
  // |alpha_win| <= C / sqrt(d).
  double fitted_alpha_constant = 0.0;
};

// Per-bucket T_n^alpha and the Monte Carlo estimate of
// V_n = E[max_alpha (alpha c^s + T_n^alpha c^{s/2})].
VnResult t_alpha_and_vn(const Pattern& pattern, int n, double c, const VnConfig& cfg);

// Leading-order predictor kappa + sqrt(2 ln 2 kappa) for m(F, c).
double predictor_m(const Pattern& pattern, double c);
double predictor_from_kappa(double kappa);

// (phi(x)(1/x - 1/x^3), phi(x)/x) around P[N(0,1) >= x].
std::pair<double, double> gauss_tail_bounds(double x);

// Upper bound on P(Z > u, Z_rho > u) for a standard bivariate normal.
double slepian_joint_bound(double rho, double u);

// #{(s, s') in S_0^2 : sum_i s_i s'_i = 4y} = C(n, n/2) C(n/2, n/4 - y)^2.
BigInt balanced_pair_count(int n, int y);
// log of the same count with every factorial replaced by Stirling's
// formula (0! kept exact).
double log_balanced_pair_count_stirling(int n, int y);
double log_stirling_factorial(int m);
// log C(m, k): exact via lgamma and through the entropy form of Stirling.
double log_binomial(int m, int k);
double log_binomial_stirling(int m, int k);

}  // namespace mono

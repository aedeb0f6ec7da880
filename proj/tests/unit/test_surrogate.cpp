#include <doctest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "mono/combinatorics.hpp"
#include "mono/error.hpp"
#include "mono/surrogate.hpp"
#include "../support/oracles.hpp"

using mono::BigInt;
using mono::GaussianField;
using mono::Pattern;
using mono::Rational;
using mono::Seed;
using mono::SpinConfig;

TEST_CASE("multiset enumeration and ranks") {
  std::size_t expected = 0;
  int count = 0;
  mono::for_each_multiset(4, 3, [&](std::span<const int> t, std::size_t rank) {
    CHECK(rank == expected++);
    CHECK(mono::multiset_rank(t) == rank);
    CHECK(std::is_sorted(t.begin(), t.end()));
    ++count;
  });
  CHECK(count == 20);  // C(4 + 3 - 1, 3)
}

TEST_CASE("g factor") {
  const std::vector<int> distinct{0, 1, 2};
  const std::vector<int> pair{0, 0, 2};
  const std::vector<int> same{1, 1, 1};
  const std::vector<int> two_pairs{0, 0, 3, 3};
  CHECK(mono::g_factor(distinct) == doctest::Approx(std::sqrt(6.0)));
  CHECK(mono::g_factor(pair) == doctest::Approx(std::sqrt(3.0)));
  CHECK(mono::g_factor(same) == doctest::Approx(1.0));
  CHECK(mono::g_factor(two_pairs) == doctest::Approx(std::sqrt(6.0)));
  // g^2 counts orderings.
  mono::for_each_multiset(5, 4, [&](std::span<const int> t, std::size_t) {
    const double g = mono::g_factor(t);
    CHECK(g * g == doctest::Approx(oracle::orderings({t.begin(), t.end()})));
  });
}

TEST_CASE("Gaussian field: symmetric access, determinism, negation") {
  const auto f = GaussianField::sample(5, 3, Seed{61, 0});
  const std::vector<int> a{3, 0, 2};
  const std::vector<int> b{0, 2, 3};
  CHECK(f.at(a) == f.at(b));
  CHECK(f.negated().at(a) == -f.at(a));
  const auto g = GaussianField::sample(5, 3, Seed{61, 0});
  CHECK(std::equal(f.values().begin(), f.values().end(), g.values().begin()));
  CHECK(f.values().size() == 35);
}

TEST_CASE("fast U agrees with the ordered-tuple oracle and the naive sum") {
  for (int r = 2; r <= 4; ++r) {
    for (std::uint64_t i = 0; i < 5; ++i) {
      const int n = 5 + static_cast<int>(i);
      const auto field = GaussianField::sample(n, r, Seed{62, i});
      const mono::SupportWeights w(field);
      mono::Engine eng = mono::make_engine(Seed{63, i});
      for (int j = 0; j < 10; ++j) {
        const auto s = SpinConfig::from_mask(n, eng());
        const double expect = oracle::u_ordered(field, s);
        CHECK(mono::u_field(field, s) == doctest::Approx(expect).epsilon(1e-9));
        CHECK(mono::u_field(w, s) == doctest::Approx(expect).epsilon(1e-9));
        CHECK(mono::u_field_naive(field, s) == doctest::Approx(expect).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("zero field gives U = 0") {
  const GaussianField zero(6, 3, std::vector<double>(mono::binomial(8, 3), 0.0));
  CHECK(mono::u_field(zero, SpinConfig::from_mask(6, 0b101100)) == 0.0);
  for (const auto& b : mono::max_w_by_bucket(zero, 1.0)) CHECK(b.max_u == 0.0);
}

TEST_CASE("exact covariance agrees with the tuple-sum oracle") {
  mono::Engine eng = mono::make_engine(Seed{64, 0});
  for (int i = 0; i < 60; ++i) {
    const int n = 2 + i % 6;
    const int r = 2 + i % 3;
    const auto x = SpinConfig::from_mask(n, eng());
    const auto y = SpinConfig::from_mask(n, eng());
    CHECK(mono::exact_covariance(x, y, r) == oracle::covariance(x, y, r));
  }
}

TEST_CASE("covariance closed forms") {
  // r = 2: the tuple sum is (x . y)^2.
  const SpinConfig x({1, 1, -1, -1});
  const SpinConfig y({1, -1, 1, -1});
  CHECK(mono::exact_covariance(x, y, 2) == 0);
  CHECK(mono::exact_covariance(x, x, 2) == 16);
  // Variance of a balanced configuration: n^r (2^{r-1} - 1).
  for (int r = 2; r <= 5; ++r)
    for (int n : {4, 8, 12}) {
      const auto s = SpinConfig::from_mask(n, (std::uint64_t{1} << (n / 2)) - 1);
      CHECK(mono::exact_covariance(s, s, r) == pow(BigInt(n), static_cast<unsigned>(r)) *
                                                   ((BigInt(1) << (r - 1)) - 1));
    }
  CHECK_THROWS_AS(mono::exact_covariance(x, SpinConfig::all_plus(3), 2), mono::DomainError);
}

TEST_CASE("normalised W: balanced variance is 1/n") {
  const int n = 8;
  const int r = 3;
  const auto s = SpinConfig::from_mask(n, 0b00001111);
  const double var_u = static_cast<double>(mono::factorial(r)) * mono::exact_covariance(s, s, r).convert_to<double>();
  const double w_sd = mono::w_norm(std::sqrt(var_u), n, r);
  CHECK(w_sd * w_sd == doctest::Approx(1.0 / n));
}

TEST_CASE("slice maxima: exact search agrees with enumeration") {
  for (std::uint64_t i = 0; i < 3; ++i) {
    const auto field = GaussianField::sample(8, 3, Seed{65, i});
    const auto buckets = mono::max_w_by_bucket(field, 1.0);
    REQUIRE(buckets.size() == 9);
    for (const auto& b : buckets) {
      CHECK(b.certified);
      CHECK(b.max_u == doctest::Approx(oracle::max_u_slice(field, b.plus_count)).epsilon(1e-9));
      CHECK(b.argmax.plus_count() == b.plus_count);
      CHECK(mono::u_field(field, b.argmax) == doctest::Approx(b.max_u).epsilon(1e-9));
      CHECK(b.h == Rational(2 * b.plus_count - 8, 8));
    }
    mono::SliceSearchConfig cfg;
    cfg.mode = mono::SearchMode::anneal;
    cfg.seed = Seed{66, i};
    const auto annealed = mono::max_w_by_bucket(field, 1.0, cfg);
    for (std::size_t k = 0; k < buckets.size(); ++k) {
      CHECK_FALSE(annealed[k].certified);
      CHECK(annealed[k].max_u <= buckets[k].max_u + 1e-9);
      CHECK(mono::u_field(field, annealed[k].argmax) == doctest::Approx(annealed[k].max_u).epsilon(1e-9));
    }
  }
}

TEST_CASE("slice maxima: band and capability") {
  const auto field = GaussianField::sample(10, 2, Seed{67, 0});
  const auto b = mono::max_w_by_bucket(field, 0.2);
  REQUIRE(b.size() == 3);
  CHECK(b.front().plus_count == 4);
  CHECK(b.back().plus_count == 6);
  const auto big = GaussianField::sample(40, 2, Seed{67, 1});
  CHECK_THROWS_AS(mono::max_w_by_bucket(big, 0.5), mono::CapabilityError);
}

TEST_CASE("alpha of magnetization") {
  const double k1 = -1.0 / 24.0;
  CHECK(mono::alpha_of_magnetization(k1, Rational(0), 3) == 0.0);
  for (int num = -10; num <= 10; ++num) {
    const Rational h(num, 10);
    CHECK(mono::alpha_of_magnetization(k1, h, 3) <= 0.0);
    CHECK(mono::alpha_of_magnetization(k1, h, 4) == doctest::Approx(mono::alpha_of_magnetization(k1, -h, 4)));
  }
  // r = 2: ((1+h)^2 + (1-h)^2 - 2)/2 = h^2.
  CHECK(mono::alpha_of_magnetization(-1.0, Rational(1, 2), 2) == doctest::Approx(-0.25));
}

TEST_CASE("surrogate constants") {
  const auto k = mono::SurrogateConstants::make(Pattern::complete(3), 2.0);
  CHECK(k.kappa1 == doctest::Approx(-1.0 / 24.0));
  CHECK(k.kappa2 == doctest::Approx(1.0 / 576.0));
  CHECK(k.d == doctest::Approx(8.0));
  CHECK(k.kappa == doctest::Approx(8.0 / 24.0));
  CHECK(k.kappa == doctest::Approx(-k.kappa1 * k.d));
}

TEST_CASE("predictor") {
  using Big = boost::multiprecision::cpp_bin_float_50;
  const Big kappa = Big(1) / 24;
  const Big expect = kappa + sqrt(2 * log(Big(2)) * kappa);
  CHECK(std::abs(mono::predictor_m(Pattern::complete(3), 1.0) - expect.convert_to<double>()) < 1e-12);
  double prev = 0.0;
  for (double c = 0.1; c < 5.0; c += 0.1) {
    const double m = mono::predictor_m(Pattern::complete(3), c);
    CHECK(m > prev);
    prev = m;
  }
  // kappa scales as 1/aut: the 3-edge path has aut 2, the 3-star has aut 6.
  const Pattern star(4, {{0, 1}, {0, 2}, {0, 3}});   // aut 6
  const Pattern path4(4, {{0, 1}, {1, 2}, {2, 3}});  // aut 2
  CHECK(mono::SurrogateConstants::make(path4, 1.3).kappa ==
        doctest::Approx(3.0 * mono::SurrogateConstants::make(star, 1.3).kappa));
  CHECK_THROWS_AS(mono::predictor_m(Pattern::complete(3), 0.0), mono::DomainError);
}

TEST_CASE("V_n estimate: bookkeeping") {
  mono::VnConfig cfg;
  cfg.num_fields = 4;
  cfg.h0 = 0.1;
  cfg.seed = Seed{68, 0};
  const auto res = mono::t_alpha_and_vn(Pattern::complete(3), 6, 1.0, cfg);
  REQUIRE(res.fields.size() == 4);
  CHECK(res.fields[0].field_seed == "0");
  CHECK(res.fields[1].field_seed == "-0");
  CHECK(res.fields[3].field_seed == "-1");
  double sum = 0.0;
  for (const auto& f : res.fields) {
    REQUIRE(f.buckets.size() == 7);
    for (const auto& b : f.buckets) {
      if (b.plus_count == 3) CHECK(std::isfinite(b.t_alpha));
      else CHECK(std::isinf(b.t_alpha));
    }
    CHECK(f.best_objective == f.buckets[3].objective);
    sum += f.best_objective;
  }
  CHECK(res.running_mean.size() == 4);
  CHECK(res.vn == doctest::Approx(sum / 4));
  const auto again = mono::t_alpha_and_vn(Pattern::complete(3), 6, 1.0, cfg);
  CHECK(again.vn == res.vn);
  cfg.num_fields = 0;
  CHECK_THROWS_AS(mono::t_alpha_and_vn(Pattern::complete(3), 6, 1.0, cfg), mono::DomainError);
}

TEST_CASE("Gaussian tail bounds") {
  const auto [lo, hi] = mono::gauss_tail_bounds(2.0);
  const double tail = 0.5 * std::erfc(2.0 / std::sqrt(2.0));
  CHECK(lo < tail);
  CHECK(tail < hi);
  CHECK(hi == doctest::Approx(0.026995483256594));
  CHECK(lo == doctest::Approx(0.020246612442446));
  CHECK(mono::gauss_tail_bounds(1.0).first == 0.0);
  CHECK_THROWS_AS(mono::gauss_tail_bounds(0.0), mono::DomainError);
}

TEST_CASE("Slepian-type joint bound") {
  CHECK(mono::slepian_joint_bound(0.0, 2.0) == doctest::Approx(7.2893e-4).epsilon(1e-4));
  CHECK_THROWS_AS(mono::slepian_joint_bound(1.0, 2.0), mono::DomainError);
  CHECK_THROWS_AS(mono::slepian_joint_bound(0.5, -1.0), mono::DomainError);
}

TEST_CASE("balanced pair counts") {
  CHECK(mono::balanced_pair_count(4, 0) == 24);
  CHECK(mono::balanced_pair_count(4, 1) == 6);
  CHECK(mono::balanced_pair_count(4, -1) == 6);
  // Summing over y counts all pairs of balanced configurations.
  for (int n : {4, 8, 12, 16}) {
    BigInt total = 0;
    for (int y = -n / 4; y <= n / 4; ++y) total += mono::balanced_pair_count(n, y);
    const BigInt s0 = mono::binomial_big(n, n / 2);
    CHECK(total == s0 * s0);
  }
  CHECK_THROWS_AS(mono::balanced_pair_count(6, 0), mono::DomainError);
  CHECK_THROWS_AS(mono::balanced_pair_count(8, 3), mono::DomainError);
}

TEST_CASE("Stirling approximations") {
  CHECK(mono::log_stirling_factorial(0) == 0.0);
  for (int m = 1; m <= 100; ++m) {
    const double exact = std::lgamma(m + 1.0);
    CHECK(exact - mono::log_stirling_factorial(m) > 0.0);
    CHECK(exact - mono::log_stirling_factorial(m) < 1.0 / (12.0 * m));
  }
  CHECK(mono::log_binomial(10, 3) == doctest::Approx(std::log(120.0)));
  for (int n : {100, 200}) {
    const double exact = std::log(mono::balanced_pair_count(n, 5).convert_to<double>());
    CHECK(std::abs(mono::log_balanced_pair_count_stirling(n, 5) - exact) / exact < 0.01);
  }
}

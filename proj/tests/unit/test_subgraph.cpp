#include <doctest.h>

#include "mono/error.hpp"
#include "mono/random_models.hpp"
#include "mono/subgraph.hpp"
#include "../support/oracles.hpp"

using mono::Pattern;
using mono::Rational;
using mono::Seed;
using mono::SpinConfig;

namespace {
const Pattern kDiamond(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
const Pattern kPath3(3, {{0, 1}, {1, 2}});
const Pattern kC4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});

SpinConfig random_spins(int n, mono::Engine& eng) {
  return SpinConfig::from_mask(n, eng() & ((std::uint64_t{1} << n) - 1));
}
}  // namespace

TEST_CASE("copies in small hosts") {
  CHECK(mono::enumerate_copies(mono::HostGraph::complete(4), Pattern::complete(3)).size() == 4);
  CHECK(mono::enumerate_copies(mono::HostGraph::complete(4), kDiamond).size() == 6);
  CHECK(mono::enumerate_copies(mono::HostGraph::complete(5), kC4).size() == 15);
  CHECK(mono::enumerate_copies(mono::HostGraph(6, {}), Pattern::complete(3)).size() == 0);
  CHECK(mono::enumerate_copies(mono::HostGraph(2, {{0, 1}}), Pattern::complete(3)).size() == 0);
}

TEST_CASE("copy count times aut equals injective homomorphisms") {
  for (const auto& p : {Pattern::complete(3), kPath3, kC4, kDiamond}) {
    for (std::uint64_t i = 0; i < 8; ++i) {
      const auto host = mono::sample_gnp(8, 0.5, Seed{21, i});
      const auto copies = mono::enumerate_copies(host, p);
      CHECK(copies.size() * p.aut_count() == oracle::injective_homomorphisms(host, p));
      for (const auto& c : copies.copies()) {
        // The recorded labelled copy really sits inside the host.
        const auto& rep = copies.as_hypergraph().copy_set().representatives()[c.copy];
        for (auto [a, b] : rep) CHECK(host.adjacent(c.vertices[static_cast<std::size_t>(a)],
                                                    c.vertices[static_cast<std::size_t>(b)]));
      }
    }
  }
}

TEST_CASE("incidence lists") {
  const auto copies = mono::enumerate_copies(mono::HostGraph::complete(5), Pattern::complete(3));
  for (int v = 0; v < 5; ++v) {
    CHECK(copies.incident(v).size() == 6);
    for (auto e : copies.incident(v)) {
      const auto& vs = copies.copies()[e].vertices;
      CHECK(std::find(vs.begin(), vs.end(), v) != vs.end());
    }
  }
}

TEST_CASE("hamiltonian: examples") {
  const auto h = mono::sample_fgraph(Pattern::complete(3), 4, 1.0, Seed{});
  CHECK(mono::hamiltonian(h, SpinConfig::all_plus(4)) == 4);
  CHECK(mono::hamiltonian(h, SpinConfig({1, 1, -1, -1})) == 0);
  CHECK(mono::hamiltonian(h, SpinConfig({1, 1, 1, -1})) == 1);
  CHECK_THROWS_AS(mono::hamiltonian(h, SpinConfig::all_plus(5)), mono::DomainError);

  const auto copies = mono::enumerate_copies(mono::HostGraph::complete(4), Pattern::complete(3));
  CHECK(mono::hamiltonian_graph(copies, SpinConfig({1, 1, 1, -1})) == 1);
}

TEST_CASE("hamiltonian agrees with the oracle") {
  mono::Engine eng = mono::make_engine(Seed{31, 0});
  for (std::uint64_t i = 0; i < 40; ++i) {
    const auto h = mono::sample_fgraph(kDiamond, 9, 0.1, Seed{32, i});
    const auto s = random_spins(9, eng);
    CHECK(mono::hamiltonian(h, s) == oracle::hamiltonian(oracle::vertex_sets(h), s));
  }
}

TEST_CASE("f polynomial") {
  const std::vector<int> a{1, 1, 1};
  const std::vector<int> b{1, -1, 1};
  const std::vector<int> c{-1, -1, -1, -1};
  CHECK(mono::f_poly(a) == 3);
  CHECK(mono::f_poly(b) == -1);
  CHECK(mono::f_poly(c) == 7);
  CHECK(mono::f_poly_closed(c) == 7);
  for (int r = 1; r <= 8; ++r) {
    for (std::uint32_t m = 0; m < (1U << r); ++m) {
      std::vector<int> x;
      for (int j = 0; j < r; ++j) x.push_back(m >> j & 1U ? 1 : -1);
      CHECK(mono::f_poly(x) == oracle::f_subsets(x));
      CHECK(mono::f_poly(x) == mono::f_poly_closed(x));
    }
  }
}

TEST_CASE("f summed over all ordered tuples") {
  CHECK(mono::f_tuple_sum(SpinConfig({1, 1, 1, -1}), 3) == Rational(48));
  CHECK(mono::f_tuple_sum(SpinConfig({1, -1}), 2) == Rational(0));
  CHECK_THROWS_AS(mono::f_tuple_sum(SpinConfig({1, -1}), 0), mono::DomainError);
  for (int n = 1; n <= 5; ++n) {
    for (int r = 1; r <= 4; ++r) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
        const auto s = SpinConfig::from_mask(n, m);
        std::int64_t sum = 0;
        oracle::for_each_ordered_tuple(n, r, [&](const std::vector<int>& t) {
          sum += oracle::f_subsets(oracle::spins_at(s, t));
        });
        CHECK(mono::f_tuple_sum(s, r) == Rational(sum));
      }
    }
  }
}

TEST_CASE("spin-polynomial form reproduces H on random instances") {
  mono::Engine eng = mono::make_engine(Seed{41, 0});
  const std::vector<Pattern> patterns{Pattern(2, {{0, 1}}), Pattern::complete(3), kPath3, kC4, kDiamond};
  int checked = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto& p = patterns[i % patterns.size()];
    const int n = p.r() + static_cast<int>(eng() % static_cast<std::uint64_t>(11 - p.r()));
    const double q = 0.05 + 0.5 * mono::uniform01(eng);
    const auto h = mono::sample_fgraph(p, n, q, Seed{42, i});
    const auto s = random_spins(n, eng);
    CHECK(mono::spin_form_rhs(h, s) == Rational(mono::hamiltonian(h, s)));
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("spin-polynomial form: degenerate instances") {
  const auto copies = std::make_shared<const mono::LabeledCopySet>(Pattern::complete(3));
  const mono::FHypergraph empty(5, copies, {});
  CHECK(mono::spin_form_rhs(empty, SpinConfig::all_plus(5)) == Rational(0));
  const mono::FHypergraph one(3, copies, {{{0, 1, 2}, 0}});
  CHECK(mono::spin_form_rhs(one, SpinConfig::all_plus(3)) == Rational(1));
  CHECK(mono::spin_form_rhs(one, SpinConfig({1, -1, 1})) == Rational(0));
}

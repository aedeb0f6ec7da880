#include <doctest.h>

#include "mono/combinatorics.hpp"
#include "mono/error.hpp"
#include "mono/optimizer.hpp"
#include "../support/oracles.hpp"

using mono::HyperInstance;
using mono::Pattern;
using mono::Seed;
using mono::SpinConfig;

namespace {

HyperInstance random_instance(int n, int r, std::size_t m, mono::Engine& eng) {
  std::vector<int> members;
  for (std::size_t e = 0; e < m; ++e) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), eng);
    all.resize(static_cast<std::size_t>(r));
    std::sort(all.begin(), all.end());
    members.insert(members.end(), all.begin(), all.end());
  }
  return HyperInstance(n, r, members);
}

// Goodman's minimum number of monochromatic triangles in a 2-colouring of K_n.
std::int64_t goodman(int n) {
  const std::int64_t sq = std::int64_t{n - 1} * (n - 1) / 4;
  return static_cast<std::int64_t>(mono::binomial(n, 3)) - n * sq / 2;
}

}  // namespace

TEST_CASE("Goodman's formula") {
  CHECK(goodman(3) == 0);
  CHECK(goodman(4) == 0);
  CHECK(goodman(5) == 0);
  CHECK(goodman(6) == 2);
  CHECK(goodman(7) == 4);
  CHECK(goodman(8) == 8);
}

TEST_CASE("exact minimum on triangle instances of edge colourings") {
  for (int n = 3; n <= 7; ++n) {
    const auto h = mono::edge_triangle_instance(n);
    CHECK(h.n() == static_cast<int>(mono::binomial(n, 2)));
    CHECK(h.size() == mono::binomial(n, 3));
    const auto res = mono::minimize_exact(h);
    CHECK(res.certified);
    CHECK(res.best_value == goodman(n));
    CHECK(mono::hamiltonian(h, res.best_sigma) == res.best_value);
  }
  CHECK_THROWS_AS(mono::edge_triangle_instance(2), mono::DomainError);
}

TEST_CASE("exact minimum agrees with brute force") {
  mono::Engine eng = mono::make_engine(Seed{51, 0});
  for (int i = 0; i < 20; ++i) {
    const int n = 4 + i % 11;
    const int r = 2 + i % 3;
    if (n < r) continue;
    const auto h = random_instance(n, r, static_cast<std::size_t>(2 * n + i), eng);
    const auto edges = oracle::vertex_sets(h);
    CHECK(mono::minimize_exact(h).best_value == oracle::min_h(edges, n));
    const auto band = mono::MagnetizationBand::balanced(n);
    const auto constrained = mono::minimize_exact(h, band);
    CHECK(constrained.best_value == oracle::min_h(edges, n, band.min_plus, band.max_plus));
    CHECK(band.contains(constrained.best_sigma.plus_count()));
  }
}

TEST_CASE("complete graph K6 as a 2-uniform instance: max cut 9, min H 6") {
  const auto copies = mono::enumerate_copies(mono::HostGraph::complete(6), Pattern(2, {{0, 1}}));
  const HyperInstance h(copies);
  const auto res = mono::minimize_exact(h);
  CHECK(res.best_value == 6);
  CHECK(mono::cut_value(h, res.best_sigma) == 9);
  CHECK(mono::cut_value(copies.as_hypergraph(), res.best_sigma) == 9);
}

TEST_CASE("magnetization bands") {
  const auto b6 = mono::MagnetizationBand::balanced(6);
  CHECK(b6.min_plus == 3);
  CHECK(b6.max_plus == 3);
  const auto b7 = mono::MagnetizationBand::balanced(7);
  CHECK(b7.min_plus == 3);
  CHECK(b7.max_plus == 4);
  const auto h = mono::MagnetizationBand::from_h0(10, 0.2);
  CHECK(h.min_plus == 4);
  CHECK(h.max_plus == 6);
  CHECK(h.contains(5));
  CHECK_FALSE(h.contains(7));
}

TEST_CASE("flip delta matches recomputation") {
  mono::Engine eng = mono::make_engine(Seed{52, 0});
  for (int i = 0; i < 1000; ++i) {
    const int n = 5 + i % 10;
    const auto h = random_instance(n, 3, static_cast<std::size_t>(n), eng);
    auto s = SpinConfig::from_mask(n, eng());
    const int v = static_cast<int>(eng() % static_cast<std::uint64_t>(n));
    const auto before = mono::hamiltonian(h, s);
    const auto delta = mono::flip_delta(h, s, v);
    s.flip(v);
    CHECK(mono::hamiltonian(h, s) - before == delta);
  }
}

TEST_CASE("negating every spin leaves H unchanged") {
  mono::Engine eng = mono::make_engine(Seed{53, 0});
  const auto h = random_instance(12, 4, 40, eng);
  for (int i = 0; i < 50; ++i) {
    const auto s = SpinConfig::from_mask(12, eng());
    CHECK(mono::hamiltonian(h, s) == mono::hamiltonian(h, s.negated()));
  }
}

TEST_CASE("empty instance") {
  const HyperInstance h(5, 3, {});
  const auto res = mono::minimize_exact(h);
  CHECK(res.best_value == 0);
  mono::AnnealConfig cfg;
  cfg.restarts = 2;
  CHECK(mono::minimize_anneal(h, cfg).best_value == 0);
}

TEST_CASE("annealing is an upper bound and usually optimal at n = 16") {
  int equal = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    mono::Engine eng = mono::make_engine(Seed{54, i});
    const auto h = random_instance(16, 3, 60, eng);
    const auto exact = mono::minimize_exact(h).best_value;
    mono::AnnealConfig cfg;
    cfg.seed = Seed{55, i};
    const auto res = mono::minimize_anneal(h, cfg);
    CHECK_FALSE(res.certified);
    CHECK(res.best_value >= exact);
    CHECK(mono::hamiltonian(h, res.best_sigma) == res.best_value);
    equal += res.best_value == exact;
  }
  CHECK(equal >= 45);
}

TEST_CASE("annealing: restarts, bands and determinism") {
  mono::Engine eng = mono::make_engine(Seed{56, 0});
  const auto h = random_instance(40, 3, 300, eng);
  mono::AnnealConfig cfg;
  cfg.seed = Seed{57, 0};
  cfg.restarts = 1;
  const auto one = mono::minimize_anneal(h, cfg);
  cfg.restarts = 8;
  const auto eight = mono::minimize_anneal(h, cfg);
  // Restart i uses the same stream whatever the restart count.
  CHECK(eight.best_value <= one.best_value);
  CHECK(mono::minimize_anneal(h, cfg).best_value == eight.best_value);

  const auto band = mono::MagnetizationBand::balanced(40);
  const auto constrained = mono::minimize_anneal(h, cfg, band);
  CHECK(band.contains(constrained.best_sigma.plus_count()));
  CHECK(mono::hamiltonian(h, constrained.best_sigma) == constrained.best_value);
}

TEST_CASE("constrained exact minimum is never below the unconstrained one") {
  mono::Engine eng = mono::make_engine(Seed{58, 0});
  for (int i = 0; i < 10; ++i) {
    const auto h = random_instance(12, 3, 30, eng);
    CHECK(mono::minimize_exact(h, mono::MagnetizationBand::balanced(12)).best_value >=
          mono::minimize_exact(h).best_value);
  }
}

TEST_CASE("capability limits") {
  const HyperInstance big(mono::kMaxExactVertices + 1, 2, {});
  CHECK_THROWS_AS(mono::minimize_exact(big), mono::CapabilityError);
  CHECK_THROWS_AS(HyperInstance(4, 3, {0, 1}), mono::DomainError);
}

#include <doctest.h>

#include "mono/error.hpp"
#include "mono/pattern.hpp"
#include "../support/oracles.hpp"

using mono::Pattern;
using mono::Rational;

namespace {

// Every graph on up to `r` vertices, as edge lists over the C(r,2) pairs.
std::vector<mono::EdgeSet> all_graphs(int r) {
  std::vector<mono::Edge> pairs;
  for (int u = 0; u < r; ++u)
    for (int v = u + 1; v < r; ++v) pairs.emplace_back(u, v);
  std::vector<mono::EdgeSet> out;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << pairs.size()); ++m) {
    mono::EdgeSet e;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (m >> i & 1U) e.push_back(pairs[i]);
    out.push_back(e);
  }
  return out;
}

}  // namespace

TEST_CASE("parse_pattern: triangle, edge and diamond") {
  const auto k3 = mono::parse_pattern("3 3\n0 1\n1 2\n0 2\n");
  CHECK(k3.r() == 3);
  CHECK(k3.s() == 3);
  CHECK(k3.aut_count() == 6);
  CHECK(k3.d1() == Rational(3, 2));

  const auto k2 = mono::parse_pattern("2 1\n0 1");
  CHECK(k2.aut_count() == 2);
  CHECK(k2.d1() == Rational(1));

  const auto diamond = mono::parse_pattern("4 5\n0 1\n1 2\n2 3\n0 3\n0 2");
  CHECK(diamond.aut_count() == 4);
  CHECK(diamond.d1() == Rational(5, 3));
}

TEST_CASE("parse_pattern errors name the line") {
  auto line_of = [](const char* text) -> std::size_t {
    try {
      (void)mono::parse_pattern(text);
    } catch (const mono::ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of("3 2\n0 1\n0 1\n") == 3);   // duplicate edge
  CHECK(line_of("3 2\n0 1\n1 5\n") == 3);   // out of range
  CHECK(line_of("3 2\n0 1\n") > 0);         // s mismatch
  CHECK(line_of("x y\n") == 1);             // malformed header
  CHECK(line_of("3 1\n1 1\n") == 2);        // self loop
  CHECK(line_of("3 1\n0 1 2\n") == 2);      // trailing token
}

TEST_CASE("automorphism counts") {
  CHECK(Pattern::complete(3).aut_count() == 6);
  CHECK(Pattern(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}).aut_count() == 8);
  CHECK(Pattern(3, {{0, 1}, {1, 2}}).aut_count() == 2);
}

TEST_CASE("automorphism count matches permutation oracle and divides r!") {
  for (int r = 2; r <= 5; ++r)
    for (const auto& e : all_graphs(r)) {
      const Pattern p(r, e);
      CHECK(p.aut_count() == oracle::automorphisms(r, e));
      std::uint64_t rf = 1;
      for (int i = 2; i <= r; ++i) rf *= static_cast<std::uint64_t>(i);
      CHECK(rf % p.aut_count() == 0);
    }
}

TEST_CASE("patterns above ten vertices are refused") {
  CHECK_THROWS_AS(Pattern(11, {{0, 1}}), mono::CapabilityError);
  CHECK_NOTHROW(Pattern(10, {{0, 1}}));
}

TEST_CASE("strict 1-balance examples") {
  CHECK(mono::is_strictly_1_balanced(Pattern::complete(3)).strictly_balanced);

  const auto path = mono::is_strictly_1_balanced(Pattern(3, {{0, 1}, {1, 2}}));
  CHECK_FALSE(path.strictly_balanced);
  REQUIRE(path.witness.has_value());
  CHECK(path.witness->edges.size() == 1);
  CHECK(path.witness->d1 == Rational(1));

  CHECK_FALSE(mono::is_strictly_1_balanced(Pattern(4, {{0, 1}, {2, 3}})).strictly_balanced);
}

TEST_CASE("strict 1-balance agrees with the double-loop oracle for r <= 5") {
  int checked = 0;
  for (int r = 2; r <= 5; ++r)
    for (const auto& e : all_graphs(r)) {
      const Pattern p(r, e);
      const auto rep = mono::is_strictly_1_balanced(p);
      CHECK(rep.strictly_balanced == oracle::strictly_balanced(r, e));
      if (!rep.strictly_balanced) {
        REQUIRE(rep.witness.has_value());
        CHECK(rep.witness->d1 >= p.d1());
      }
      ++checked;
    }
  CHECK(checked == 1 + 7 + 63 + 1023);
}

TEST_CASE("labelled copies") {
  CHECK(mono::labeled_copies(Pattern::complete(3)).count() == 1);
  CHECK(mono::labeled_copies(Pattern::complete(2)).count() == 1);
  const Pattern diamond(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {0, 2}});
  const auto set = mono::labeled_copies(diamond);
  CHECK(set.count() == 6);
  for (std::size_t i = 1; i < set.representatives().size(); ++i)
    CHECK(set.representatives()[i - 1] < set.representatives()[i]);
}

TEST_CASE("copies times automorphisms is r! for every graph with r <= 5") {
  for (int r = 2; r <= 5; ++r)
    for (const auto& e : all_graphs(r)) {
      const Pattern p(r, e);
      const mono::LabeledCopySet set(p);
      CHECK(set.count() == oracle::orbit_size(r, e));
      std::uint64_t rf = 1;
      for (int i = 2; i <= r; ++i) rf *= static_cast<std::uint64_t>(i);
      CHECK(set.count() * p.aut_count() == rf);
    }
}

TEST_CASE("copy lookup inverts the permutation table") {
  const Pattern c4(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  const mono::LabeledCopySet set(c4);
  for (std::size_t i = 0; i < set.count(); ++i) CHECK(set.find(set.representatives()[i]) == i);
  CHECK_FALSE(set.find({{0, 1}}).has_value());
}

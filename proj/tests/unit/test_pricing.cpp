#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <variant>

#include "fixtures.hpp"
#include "marketclear/errors.hpp"
#include "marketclear/matching.hpp"
#include "marketclear/pricing.hpp"
#include "marketclear/verify.hpp"

using namespace marketclear;
using testsupport::demo_market;
using testsupport::matrix;
using testsupport::prices;

TEST_CASE("the constraint digraph holds the relabeled payoff differences") {
  // Diagonal matching on [[3,2],[1,4]]: edge 2->1 has length v11-v12 = 1 and
  // edge 1->2 has length v22-v21 = 3, after the two zero-length source edges.
  ValuationMatrix V = matrix({{3, 2}, {1, 4}});
  ConstraintDigraph D = build_constraint_digraph(V, Matching({{0, 0}, {1, 1}}));
  CHECK(D.n == 2);
  REQUIRE(D.edges.size() == 4);
  CHECK(D.edges[0].from == 0);
  CHECK(D.edges[0].to == 1);
  CHECK(D.edges[0].length == 0);
  CHECK(D.edges[1].from == 0);
  CHECK(D.edges[1].to == 2);
  CHECK(D.edges[1].length == 0);
  CHECK(D.edges[2].from == 2);
  CHECK(D.edges[2].to == 1);
  CHECK(D.edges[2].length == 1);
  CHECK(D.edges[3].from == 1);
  CHECK(D.edges[3].to == 2);
  CHECK(D.edges[3].length == 3);

  CHECK_THROWS_AS(build_constraint_digraph(V, Matching({{0, 0}})),
                  NotPerfectError);
}

TEST_CASE("shortest paths solve the difference constraints") {
  SUBCASE("single node market") {
    auto result = shortest_paths_or_cycle(
        build_constraint_digraph(matrix({{5}}), Matching({{0, 0}})));
    REQUIRE(std::holds_alternative<std::vector<Rational>>(result));
    CHECK(std::get<std::vector<Rational>>(result) == std::vector<Rational>{0});
  }
  SUBCASE("a maximum matching leaves all distances at zero here") {
    auto result = shortest_paths_or_cycle(build_constraint_digraph(
        matrix({{3, 2}, {1, 4}}), Matching({{0, 0}, {1, 1}})));
    REQUIRE(std::holds_alternative<std::vector<Rational>>(result));
    CHECK(std::get<std::vector<Rational>>(result) ==
          std::vector<Rational>{0, 0});
  }
  SUBCASE("the swapped matching yields the cycle with lengths -1 and -3") {
    auto result = shortest_paths_or_cycle(build_constraint_digraph(
        matrix({{3, 2}, {1, 4}}), Matching({{0, 1}, {1, 0}})));
    REQUIRE(std::holds_alternative<NegativeCycleWitness>(result));
    const auto& witness = std::get<NegativeCycleWitness>(result);
    CHECK(witness.total == -4);
    CHECK(witness.nodes.size() == 2);
    Rational resummed = 0;
    for (const Rational& len : witness.lengths) resummed += len;
    CHECK(resummed == witness.total);
  }
}

TEST_CASE("shortest distances satisfy every edge and stay nonpositive") {
  std::mt19937_64 rng(24680);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    ValuationMatrix V = random_market(n, 12, rng);
    Matching M = brute_force_max_matchings(V).matchings.matchings().front();
    ConstraintDigraph D = build_constraint_digraph(V, M);
    auto result = shortest_paths_or_cycle(D);
    // A maximum matching never produces a negative cycle.
    REQUIRE(std::holds_alternative<std::vector<Rational>>(result));
    const auto& L = std::get<std::vector<Rational>>(result);
    for (const ConstraintEdge& e : D.edges) {
      Rational from_dist = e.from == 0 ? Rational(0) : L[e.from - 1];
      CHECK(L[e.to - 1] <= from_dist + e.length);
    }
    for (const Rational& Li : L) CHECK(Li <= 0);
  }
}

TEST_CASE("prices from a maximum matching clear the market and induce it") {
  SUBCASE("single buyer") {
    auto result = prices_from_matching(matrix({{5}}), Matching({{0, 0}}));
    REQUIRE(std::holds_alternative<PriceVector>(result));
    CHECK(std::get<PriceVector>(result) == prices({0}));
  }
  SUBCASE("diagonal maximum of [[3,2],[1,4]] prices at zero") {
    auto result = prices_from_matching(matrix({{3, 2}, {1, 4}}),
                                       Matching({{0, 0}, {1, 1}}));
    REQUIRE(std::holds_alternative<PriceVector>(result));
    CHECK(std::get<PriceVector>(result) == prices({0, 0}));
  }
  SUBCASE("demo market maximum matching") {
    ValuationMatrix V = demo_market();
    Matching M({{0, 0}, {1, 2}, {2, 1}});
    auto result = prices_from_matching(V, M);
    REQUIRE(std::holds_alternative<PriceVector>(result));
    const PriceVector& p = std::get<PriceVector>(result);
    CHECK(is_market_clearing(V, p));
    PreferredProductGraph G = preferred_graph(V, p);
    for (auto [b, j] : M.pairs()) CHECK(G.has_edge(b, j));
  }
  SUBCASE("partial matchings are rejected") {
    CHECK_THROWS_AS(prices_from_matching(demo_market(), Matching({{0, 0}})),
                    NotPerfectError);
  }
}

TEST_CASE("a non-maximum matching produces a strictly improving rotation") {
  ValuationMatrix V = matrix({{3, 2}, {1, 4}});
  Matching swapped({{0, 1}, {1, 0}});
  auto result = prices_from_matching(V, swapped);
  REQUIRE(std::holds_alternative<NotMaximum>(result));
  const auto& fail = std::get<NotMaximum>(result);
  CHECK(fail.total == -4);
  CHECK(fail.cycle_buyers.size() == 2);
  Matching rotated = rotate_cycle(swapped, fail.cycle_buyers);
  CHECK(social_welfare(V, rotated) == 7);
  CHECK(social_welfare(V, rotated) > social_welfare(V, swapped));
}

TEST_CASE("successful prices satisfy the payoff constraints edge by edge") {
  std::mt19937_64 rng(111213);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    ValuationMatrix V = random_market(n, 15, rng);
    Matching M = brute_force_max_matchings(V).matchings.matchings().front();
    auto result = prices_from_matching(V, M);
    REQUIRE(std::holds_alternative<PriceVector>(result));
    const PriceVector& p = std::get<PriceVector>(result);
    CHECK(is_market_clearing(V, p));
    // Buyer i weakly prefers its assigned product under p.
    for (auto [i, mi] : M.pairs())
      for (int k = 0; k < n; ++k)
        CHECK(V.value(i, mi) - p[mi] >= V.value(i, k) - p[k]);
  }
}

TEST_CASE("random non-maximum matchings are rejected with a working witness") {
  std::mt19937_64 rng(141516);
  int produced = 0;
  while (produced < 25) {
    int n = 2 + static_cast<int>(rng() % 5);
    ValuationMatrix V = random_market(n, 15, rng);
    MaxMatchingsResult oracle = brute_force_max_matchings(V);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Matching M = Matching::from_permutation(perm);
    if (oracle.matchings.contains(M)) continue;  // sampled a maximum; retry
    ++produced;
    auto result = prices_from_matching(V, M);
    REQUIRE(std::holds_alternative<NotMaximum>(result));
    const auto& fail = std::get<NotMaximum>(result);
    CHECK(fail.total < 0);
    Matching rotated = rotate_cycle(M, fail.cycle_buyers);
    CHECK(rotated.is_perfect(n));
    CHECK(social_welfare(V, rotated) > social_welfare(V, M));
  }
}

TEST_CASE("every maximum matching admits inducing prices") {
  std::mt19937_64 rng(171819);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    ValuationMatrix V = random_market(n, 8, rng);
    MaxMatchingsResult oracle = brute_force_max_matchings(V);
    for (const Matching& M : oracle.matchings.matchings()) {
      auto result = prices_from_matching(V, M);
      REQUIRE(std::holds_alternative<PriceVector>(result));
      PreferredProductGraph G =
          preferred_graph(V, std::get<PriceVector>(result));
      for (auto [b, j] : M.pairs()) CHECK(G.has_edge(b, j));
    }
  }
}

TEST_CASE("diagonal shift adds the scalar to every coordinate") {
  CHECK(diagonal_shift(prices({0, 0}), 1) == prices({1, 1}));
  CHECK(diagonal_shift(prices({3, 1, 0}), -3) == prices({0, -2, -3}));
  CHECK(diagonal_shift(prices({7}), parse_rational("1/2")) ==
        PriceVector{parse_rational("15/2")});
}

TEST_CASE("convex combination interpolates exactly") {
  PriceVector p = prices({3, 1, 0});
  PriceVector q = prices({5, 1, 0});
  CHECK(convex_combine(p, p, parse_rational("1/3")) == p);
  CHECK(convex_combine(p, q, 1) == p);
  CHECK(convex_combine(p, q, 0) == q);
  CHECK(convex_combine(p, q, parse_rational("1/2")) == prices({4, 1, 0}));
  CHECK_THROWS_AS(convex_combine(p, q, parse_rational("3/2")),
                  AlphaOutOfRangeError);
  CHECK_THROWS_AS(convex_combine(p, q, Rational(-1, 4)), AlphaOutOfRangeError);
  CHECK_THROWS_AS(convex_combine(p, prices({0}), parse_rational("1/2")),
                  DimensionMismatchError);
}

TEST_CASE("the four transforms preserve clearing on the demo market") {
  // q = (5,1,0) also clears: its payoff rows (7,3,2), (3,6,6), (2,4,2) keep
  // the matching {(0,0),(1,2),(2,1)} inside the graph, though the graph
  // itself differs from the one under p.
  ValuationMatrix V = demo_market();
  PriceVector p = prices({3, 1, 0});
  PriceVector q = prices({5, 1, 0});
  REQUIRE(is_market_clearing(V, p));
  REQUIRE(is_market_clearing(V, q));
  CHECK(preferred_graph(V, p) != preferred_graph(V, q));
  CHECK(is_market_clearing(V, diagonal_shift(p, 7)));
  CHECK(is_market_clearing(V, diagonal_shift(p, parse_rational("-13/3"))));
  CHECK(is_market_clearing(V, convex_combine(p, q, parse_rational("1/2"))));
  CHECK(is_market_clearing(V, elementwise_max(p, q)));
  CHECK(is_market_clearing(V, elementwise_min(p, q)));
}

TEST_CASE("elementwise extremes and normalization") {
  PriceVector p = prices({3, 1, 0});
  PriceVector q = prices({5, 1, 0});
  CHECK(elementwise_max(p, q) == q);
  CHECK(elementwise_min(p, q) == p);
  CHECK(elementwise_max(p, p) == p);
  CHECK(elementwise_min(prices({1, 5}), prices({4, 2})) == prices({1, 2}));
  CHECK_THROWS_AS(elementwise_max(p, prices({1})), DimensionMismatchError);
  CHECK_THROWS_AS(elementwise_min(p, prices({1})), DimensionMismatchError);
  CHECK(normalize(prices({0, -2, -3})) == prices({3, 1, 0}));
  CHECK(normalize(prices({0, 0})) == prices({0, 0}));
  CHECK(normalize(prices({5, 7})) == prices({0, 2}));
  CHECK(normalize(PriceVector{}) == PriceVector{});
}

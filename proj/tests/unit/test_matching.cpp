#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <variant>

#include "fixtures.hpp"
#include "marketclear/errors.hpp"
#include "marketclear/matching.hpp"
#include "marketclear/verify.hpp"

using namespace marketclear;
using testsupport::demo_market;
using testsupport::matrix;
using testsupport::prices;

namespace {

// Independent of the enumerator under test: keep exactly the permutations
// whose edges all lie inside the graph.
MatchingSet filter_all_permutations(const PreferredProductGraph& G) {
  std::vector<int> perm(G.n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Matching> kept;
  do {
    bool inside = true;
    for (int i = 0; i < G.n && inside; ++i) inside = G.has_edge(i, perm[i]);
    if (inside) kept.push_back(Matching::from_permutation(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return MatchingSet(std::move(kept));
}

}  // namespace

TEST_CASE("matching sets behave as canonical sets") {
  Matching a({{0, 0}, {1, 1}});
  Matching b({{0, 1}, {1, 0}});
  MatchingSet set({b, a, a});
  CHECK(set.size() == 2);
  CHECK(set.contains(a));
  CHECK(set.matchings().front() == a);  // lexicographic order
  MatchingSet singleton({a});
  CHECK(singleton.subset_of(set));
  CHECK_FALSE(set.subset_of(singleton));
  set.insert(a);
  CHECK(set.size() == 2);
  CHECK(set == MatchingSet({a, b}));
}

TEST_CASE("auction solves the trivial markets without raising prices") {
  SUBCASE("single buyer") {
    AuctionResult result = solve_auction(matrix({{5}}));
    CHECK(result.prices == prices({0}));
    CHECK(result.matching.pairs() == std::vector<std::pair<int, int>>{{0, 0}});
    CHECK(result.trace.rounds.empty());
  }
  SUBCASE("identity valuations clear at zero") {
    AuctionResult result = solve_auction(matrix({{1, 0}, {0, 1}}));
    CHECK(result.prices == prices({0, 0}));
    CHECK(result.matching.pairs() ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  }
}

TEST_CASE("auction finds clearing prices for the demo market") {
  ValuationMatrix V = demo_market();
  AuctionResult result = solve_auction(V);
  CHECK(is_market_clearing(V, result.prices));
  CHECK(*std::min_element(result.prices.begin(), result.prices.end()) == 0);
  CHECK(result.matching.pairs() ==
        std::vector<std::pair<int, int>>{{0, 0}, {1, 2}, {2, 1}});
  CHECK(social_welfare(V, result.matching) == 23);
}

TEST_CASE("auction rounds record genuine constricted sets") {
  // Both buyers start out demanding product 0, so its price must rise.
  ValuationMatrix V = matrix({{2, 0}, {2, 0}});
  AuctionResult result = solve_auction(V);
  CHECK(is_market_clearing(V, result.prices));
  REQUIRE_FALSE(result.trace.rounds.empty());
  for (const AuctionRound& round : result.trace.rounds) {
    CHECK(round.neighborhood.size() < round.constricted.size());
    CHECK(round.raised == round.neighborhood);
    CHECK(round.prices.size() == 2);
  }
}

TEST_CASE("auction scales fractional valuations to integers internally") {
  ValuationMatrix V = ValuationMatrix::from_rows(
      {{parse_rational("1/2"), parse_rational("1/3")},
       {parse_rational("1/2"), parse_rational("1/5")}});
  AuctionResult result = solve_auction(V);
  CHECK(is_market_clearing(V, result.prices));
  CHECK(*std::min_element(result.prices.begin(), result.prices.end()) == 0);
}

TEST_CASE("auction prices clear random rational markets") {
  std::mt19937_64 rng(445566);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (auto& row : rows)
      for (auto& cell : row)
        cell = Rational(static_cast<long long>(rng() % 30),
                        static_cast<long long>(1 + rng() % 4));
    ValuationMatrix V = ValuationMatrix::from_rows(rows);
    AuctionResult result = solve_auction(V);
    CHECK(is_market_clearing(V, result.prices));
  }
}

TEST_CASE("the exhaustive oracle returns every maximum matching") {
  SUBCASE("single cell") {
    MaxMatchingsResult result = brute_force_max_matchings(matrix({{5}}));
    CHECK(result.welfare == 5);
    REQUIRE(result.matchings.size() == 1);
    CHECK(result.matchings.matchings().front().pairs() ==
          std::vector<std::pair<int, int>>{{0, 0}});
  }
  SUBCASE("full symmetry keeps both permutations") {
    MaxMatchingsResult result = brute_force_max_matchings(matrix({{1, 1}, {1, 1}}));
    CHECK(result.welfare == 2);
    CHECK(result.matchings.size() == 2);
  }
  SUBCASE("demo market: permutation welfares 21, 23, 14, 17, 15, 16") {
    ValuationMatrix V = demo_market();
    // Frozen by direct summation over the 3! assignments in lexicographic
    // order; 23 is the unique maximum.
    std::vector<int> expected{21, 23, 14, 17, 15, 16};
    std::vector<int> perm{0, 1, 2};
    std::size_t k = 0;
    do {
      CHECK(social_welfare(V, Matching::from_permutation(perm)) ==
            expected[k++]);
    } while (std::next_permutation(perm.begin(), perm.end()));

    MaxMatchingsResult result = brute_force_max_matchings(V);
    CHECK(result.welfare == 23);
    REQUIRE(result.matchings.size() == 1);
    CHECK(result.matchings.matchings().front().pairs() ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 2}, {2, 1}});
  }
  SUBCASE("the size cap is enforced") {
    CHECK_THROWS_AS(brute_force_max_matchings(demo_market(), 2),
                    OracleCapExceededError);
  }
}

TEST_CASE("oracle members attain the welfare and nothing beats it") {
  std::mt19937_64 rng(987123);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + static_cast<int>(rng() % 5);
    ValuationMatrix V = random_market(n, 6, rng);
    MaxMatchingsResult result = brute_force_max_matchings(V);
    for (const Matching& m : result.matchings.matchings())
      CHECK(social_welfare(V, m) == result.welfare);
    // Re-walk all n! permutations independently of the oracle's own loop.
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Matching m = Matching::from_permutation(perm);
      Rational w = social_welfare(V, m);
      CHECK(w <= result.welfare);
      CHECK(result.matchings.contains(m) == (w == result.welfare));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST_CASE("enumeration lists exactly the perfect matchings of the graph") {
  SUBCASE("identity graph has one") {
    auto result = induced_matchings(matrix({{1, 0}, {0, 1}}), prices({0, 0}));
    REQUIRE(std::holds_alternative<MatchingSet>(result));
    CHECK(std::get<MatchingSet>(result).size() == 1);
  }
  SUBCASE("the complete 3x3 graph has all 6") {
    auto result = induced_matchings(matrix({{4, 4, 4}, {4, 4, 4}, {4, 4, 4}}),
                                    prices({0, 0, 0}));
    REQUIRE(std::holds_alternative<MatchingSet>(result));
    CHECK(std::get<MatchingSet>(result).size() == 6);
  }
  SUBCASE("the demo market graph is forced to one completion") {
    auto result = induced_matchings(demo_market(), prices({3, 1, 0}));
    REQUIRE(std::holds_alternative<MatchingSet>(result));
    const MatchingSet& set = std::get<MatchingSet>(result);
    REQUIRE(set.size() == 1);
    CHECK(set.matchings().front().pairs() ==
          std::vector<std::pair<int, int>>{{0, 0}, {1, 2}, {2, 1}});
  }
}

TEST_CASE("enumeration reports cap overflow with a valid partial set") {
  // The complete 4x4 graph has 24 perfect matchings.
  ValuationMatrix V =
      matrix({{1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}});
  PriceVector zero = prices({0, 0, 0, 0});
  auto result = induced_matchings(V, zero, 10);
  REQUIRE(std::holds_alternative<CapExceeded>(result));
  const auto& exceeded = std::get<CapExceeded>(result);
  CHECK(exceeded.cap == 10);
  CHECK(exceeded.partial.size() == 10);
  PreferredProductGraph G = preferred_graph(V, zero);
  for (const Matching& m : exceeded.partial.matchings()) {
    CHECK(m.is_perfect(4));
    for (auto [b, p] : m.pairs()) CHECK(G.has_edge(b, p));
  }
  // A roomy cap returns the full set instead.
  auto full = induced_matchings(V, zero, 24);
  REQUIRE(std::holds_alternative<MatchingSet>(full));
  CHECK(std::get<MatchingSet>(full).size() == 24);
}

TEST_CASE("enumeration agrees with the permutation filter on random graphs") {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    ValuationMatrix V = random_market(n, 5, rng);  // ties make rich graphs
    PreferredProductGraph G = preferred_graph(V, PriceVector(n, Rational(0)));
    auto result = enumerate_perfect_matchings(G);
    REQUIRE(std::holds_alternative<MatchingSet>(result));
    CHECK(std::get<MatchingSet>(result) == filter_all_permutations(G));
  }
}

#include "marketclear/matching.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "marketclear/errors.hpp"

namespace marketclear {

MatchingSet::MatchingSet(std::vector<Matching> matchings)
    : matchings_(std::move(matchings)) {
  std::sort(matchings_.begin(), matchings_.end());
  matchings_.erase(std::unique(matchings_.begin(), matchings_.end()),
                   matchings_.end());
}

void MatchingSet::insert(Matching m) {
  auto it = std::lower_bound(matchings_.begin(), matchings_.end(), m);
  if (it != matchings_.end() && *it == m) return;
  matchings_.insert(it, std::move(m));
}

bool MatchingSet::contains(const Matching& m) const {
  return std::binary_search(matchings_.begin(), matchings_.end(), m);
}

bool MatchingSet::subset_of(const MatchingSet& other) const {
  return std::includes(other.matchings_.begin(), other.matchings_.end(),
                       matchings_.begin(), matchings_.end());
}

AuctionResult solve_auction(const ValuationMatrix& V) {
  const int n = V.size();

  // Scale valuations to integers so unit price raises terminate.
  BigInt scale = 1;
  for (const Rational& v : V.raw()) scale = lcm(scale, denominator(v));
  std::vector<Rational> scaled;
  scaled.reserve(V.raw().size());
  for (const Rational& v : V.raw()) scaled.push_back(v * Rational(scale));
  ValuationMatrix W(n, std::move(scaled));

  // Potential bound: each raise lowers sum(prices) + sum(payoffs) by at
  // least one, and that sum starts at sum_i max_j w_ij and stays nonnegative.
  BigInt max_rounds = 2;
  for (int i = 0; i < n; ++i) {
    Rational row_max = 0;
    for (int j = 0; j < n; ++j) row_max = std::max(row_max, W.value(i, j));
    max_rounds += numerator(row_max);
  }

  PriceVector prices(n, Rational(0));
  AuctionTrace trace;
  Matching matched;
  const Rational inv_scale = Rational(BigInt(1), scale);

  for (BigInt round = 0;; ++round) {
    if (round > max_rounds)
      throw Error("auction failed to terminate within its potential bound");
    PerfectMatchingResult result = find_perfect_matching(preferred_graph(W, prices));
    if (auto* m = std::get_if<Matching>(&result)) {
      matched = *m;
      break;
    }
    const auto& witness = std::get<ConstrictedSet>(result);
    for (int j : witness.neighborhood) prices[j] += 1;
    Rational low = *std::min_element(prices.begin(), prices.end());
    if (low > 0)
      for (Rational& pj : prices) pj -= low;

    AuctionRound entry;
    entry.constricted = witness.buyers;
    entry.neighborhood = witness.neighborhood;
    entry.raised = witness.neighborhood;
    entry.prices.reserve(n);
    for (const Rational& pj : prices) entry.prices.push_back(pj * inv_scale);
    trace.rounds.push_back(std::move(entry));
  }

  // Back to the original scale, anchored at min price zero. Shifting every
  // price equally leaves the preferred graph unchanged.
  Rational low = *std::min_element(prices.begin(), prices.end());
  PriceVector out;
  out.reserve(n);
  for (const Rational& pj : prices) out.push_back((pj - low) * inv_scale);
  return AuctionResult{std::move(out), std::move(matched), std::move(trace)};
}

MaxMatchingsResult brute_force_max_matchings(const ValuationMatrix& V, int cap) {
  const int n = V.size();
  if (n > cap)
    throw OracleCapExceededError("market size " + std::to_string(n) +
                                 " exceeds the exhaustive oracle cap " +
                                 std::to_string(cap));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  Rational best = -1;
  std::vector<Matching> argmax;
  do {
    Rational welfare = 0;
    for (int i = 0; i < n; ++i) welfare += V.value(i, perm[i]);
    if (welfare > best) {
      best = welfare;
      argmax.clear();
      argmax.push_back(Matching::from_permutation(perm));
    } else if (welfare == best) {
      argmax.push_back(Matching::from_permutation(perm));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // next_permutation walks permutations in lexicographic order, so the
  // collected argmax list is already canonical.
  return MaxMatchingsResult{MatchingSet(std::move(argmax)), best};
}

namespace {

struct Enumerator {
  const PreferredProductGraph& G;
  int cap;
  std::vector<int> product_of_buyer;
  std::vector<char> product_used;
  std::vector<Matching> found;
  bool exceeded = false;

  explicit Enumerator(const PreferredProductGraph& graph, int limit)
      : G(graph),
        cap(limit),
        product_of_buyer(graph.n, -1),
        product_used(graph.n, 0) {}

  // Picks the unassigned buyer with the fewest still-available products;
  // a count of one is a forced edge, a count of zero prunes the branch.
  void search(int assigned) {
    if (exceeded) return;
    if (assigned == G.n) {
      if (static_cast<int>(found.size()) == cap) {
        exceeded = true;
        return;
      }
      found.push_back(Matching::from_permutation(product_of_buyer));
      return;
    }
    int pick = -1;
    int pick_count = G.n + 1;
    for (int i = 0; i < G.n; ++i) {
      if (product_of_buyer[i] >= 0) continue;
      int count = 0;
      for (int j : G.preferred[i])
        if (!product_used[j]) ++count;
      if (count < pick_count) {
        pick = i;
        pick_count = count;
        if (count == 0) break;
      }
    }
    if (pick_count == 0) return;
    for (int j : G.preferred[pick]) {
      if (product_used[j]) continue;
      product_of_buyer[pick] = j;
      product_used[j] = 1;
      search(assigned + 1);
      product_of_buyer[pick] = -1;
      product_used[j] = 0;
      if (exceeded) return;
    }
  }
};

}  // namespace

EnumerationResult enumerate_perfect_matchings(const PreferredProductGraph& G,
                                              int cap) {
  if (cap < 1) throw Error("enumeration cap must be at least 1");
  Enumerator state(G, cap);
  state.search(0);
  MatchingSet set(std::move(state.found));
  if (state.exceeded) return CapExceeded{std::move(set), cap};
  return set;
}

EnumerationResult induced_matchings(const ValuationMatrix& V,
                                    const PriceVector& p, int cap) {
  return enumerate_perfect_matchings(preferred_graph(V, p), cap);
}

}  // namespace marketclear

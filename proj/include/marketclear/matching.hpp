#pragma once

#include <variant>
#include <vector>

#include "marketclear/market.hpp"

namespace marketclear {

inline constexpr int kDefaultOracleCap = 8;
inline constexpr int kDefaultEnumerationCap = 10000;

// A set of perfect matchings over a common n, kept sorted lexicographically
// with no duplicates so two sets compare canonically.
class MatchingSet {
 public:
  MatchingSet() = default;
  explicit MatchingSet(std::vector<Matching> matchings);

  void insert(Matching m);
  bool contains(const Matching& m) const;
  bool subset_of(const MatchingSet& other) const;

  const std::vector<Matching>& matchings() const { return matchings_; }
  int size() const { return static_cast<int>(matchings_.size()); }
  bool empty() const { return matchings_.empty(); }

  bool operator==(const MatchingSet& other) const = default;

 private:
  std::vector<Matching> matchings_;
};

// One price-raising round: the constricted buyer set that triggered it, its
// neighborhood (the products whose prices were raised), and the prices after
// the raise, in the original (unscaled) domain.
struct AuctionRound {
  std::vector<int> constricted;   // S, with |N(S)| < |S| when prices rose
  std::vector<int> neighborhood;  // N(S)
  std::vector<int> raised;        // products raised this round (= N(S))
  PriceVector prices;             // snapshot after the raise
};

struct AuctionTrace {
  std::vector<AuctionRound> rounds;
};

struct AuctionResult {
  PriceVector prices;  // market-clearing, normalized so min_j p_j = 0
  Matching matching;   // a perfect matching in the preferred graph of prices
  AuctionTrace trace;
};

// Ascending-price auction: start all prices at zero, and while the demand
// graph is constricted raise the prices of the over-demanded products by one
// unit (valuations are scaled to integers first so unit steps terminate).
// The returned prices always clear the market; the matching is perfect in
// their preferred graph and therefore welfare-maximal.
AuctionResult solve_auction(const ValuationMatrix& V);

struct MaxMatchingsResult {
  MatchingSet matchings;  // every welfare-maximal perfect matching
  Rational welfare;       // the maximum welfare
};

// Exhaustive n! ground truth: evaluates every perfect matching and returns
// all that attain the maximum welfare. Throws OracleCapExceededError when
// n > cap.
MaxMatchingsResult brute_force_max_matchings(const ValuationMatrix& V,
                                             int cap = kDefaultOracleCap);

// More than `cap` perfect matchings exist; `partial` holds the first `cap`
// found (canonically sorted).
struct CapExceeded {
  MatchingSet partial;
  int cap = 0;
};

using EnumerationResult = std::variant<MatchingSet, CapExceeded>;

// All perfect matchings of G, by backtracking that always extends the
// unmatched buyer with the fewest available products (so forced edges
// propagate before any branching).
EnumerationResult enumerate_perfect_matchings(const PreferredProductGraph& G,
                                              int cap = kDefaultEnumerationCap);

// Convenience: the induced set PM(p), i.e. all perfect matchings of the
// preferred graph of (V, p).
EnumerationResult induced_matchings(const ValuationMatrix& V,
                                    const PriceVector& p,
                                    int cap = kDefaultEnumerationCap);

}  // namespace marketclear

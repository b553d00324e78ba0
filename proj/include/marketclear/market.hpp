#pragma once

#include <compare>
#include <utility>
#include <variant>
#include <vector>

#include "marketclear/rational.hpp"

namespace marketclear {

// One price per product. Length must equal the market size of the matrix it
// is used with; checked at each operation. Prices may be negative.
using PriceVector = std::vector<Rational>;

// The n x n nonnegative valuation matrix: entry (i, j) is what buyer i would
// pay for product j. Equivalently the complete weighted bipartite graph on
// n buyers and n products. Indices are 0-based in code and serialized I/O;
// diagnostics use 1-based labels.
class ValuationMatrix {
 public:
  // `values` is row-major with n*n entries. Throws DimensionMismatchError if
  // the size is not n*n (or n < 1), InvalidMarketError on negative entries.
  ValuationMatrix(int n, std::vector<Rational> values);

  static ValuationMatrix from_rows(const std::vector<std::vector<Rational>>& rows);

  int size() const { return n_; }
  const Rational& value(int buyer, int product) const {
    return values_[static_cast<std::size_t>(buyer) * n_ + product];
  }
  const std::vector<Rational>& raw() const { return values_; }

  // Largest entry; zero for the all-zero matrix. Entries are nonnegative.
  Rational max_value() const;

  bool operator==(const ValuationMatrix& other) const = default;

 private:
  int n_;
  std::vector<Rational> values_;  // row-major
};

// An injective partial map buyers -> products, kept as (buyer, product)
// pairs sorted by buyer. Perfect when it covers all n buyers.
class Matching {
 public:
  Matching() = default;
  // Throws InvalidMarketError if a buyer or product repeats, or an index is
  // negative.
  explicit Matching(std::vector<std::pair<int, int>> pairs);

  // product_of_buyer[i] = product matched to buyer i; builds a perfect
  // matching over n = product_of_buyer.size().
  static Matching from_permutation(const std::vector<int>& product_of_buyer);

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }
  bool is_perfect(int n) const;

  // The permutation view of a perfect matching; throws NotPerfectError if
  // the matching is not perfect over n.
  std::vector<int> to_permutation(int n) const;

  // Product matched to `buyer`, or -1.
  int product_of(int buyer) const;

  // Lexicographic on the sorted pair list; the canonical set order.
  auto operator<=>(const Matching& other) const = default;

 private:
  std::vector<std::pair<int, int>> pairs_;
};

// For each buyer, the set of products maximizing her payoff v_ij - p_j under
// the current prices. Every buyer's set is nonempty and sorted ascending.
struct PreferredProductGraph {
  int n = 0;
  std::vector<std::vector<int>> preferred;

  bool has_edge(int buyer, int product) const;
  bool operator==(const PreferredProductGraph& other) const = default;
};

// Witness that no perfect matching exists: a buyer set S whose neighborhood
// N(S) in the graph is strictly smaller than S.
struct ConstrictedSet {
  std::vector<int> buyers;        // S, sorted ascending
  std::vector<int> neighborhood;  // N(S), sorted ascending, |N(S)| < |S|
};

using PerfectMatchingResult = std::variant<Matching, ConstrictedSet>;

// Sum of v_ij over the pairs of M. Throws IndexOutOfRangeError if M
// references a buyer or product beyond n.
Rational social_welfare(const ValuationMatrix& V, const Matching& M);

// The graph of payoff-maximizing products per buyer; ties keep every
// maximizer. Throws DimensionMismatchError if |p| != n.
PreferredProductGraph preferred_graph(const ValuationMatrix& V, const PriceVector& p);

// u_i = max_j (v_ij - p_j). Throws DimensionMismatchError if |p| != n.
std::vector<Rational> buyer_payoffs(const ValuationMatrix& V, const PriceVector& p);

// Either a perfect matching of G, or a constricted set certifying there is
// none. Deterministic: buyers are processed in ascending order.
PerfectMatchingResult find_perfect_matching(const PreferredProductGraph& G);

// True iff the preferred-product graph of (V, p) admits a perfect matching.
bool is_market_clearing(const ValuationMatrix& V, const PriceVector& p);

}  // namespace marketclear

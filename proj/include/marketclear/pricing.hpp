#pragma once

#include <variant>
#include <vector>

#include "marketclear/market.hpp"

namespace marketclear {

// Directed edge of the constraint digraph; nodes are 0..n with 0 the source.
struct ConstraintEdge {
  int from;
  int to;
  Rational length;
};

// The difference-constraint digraph for a perfect matching placed on the
// diagonal: an edge (0 -> i) of length 0 for every i, and for i != j an edge
// (j -> i) of length v'_ii - v'_ij, where v' is the matrix with product
// columns relabeled so the matching is the diagonal. Self-loops are vacuous
// and omitted.
struct ConstraintDigraph {
  int n = 0;                          // inner nodes 1..n, plus source 0
  std::vector<ConstraintEdge> edges;  // source edges first, then (j -> i)
};

// A directed cycle of strictly negative total length, as evidence that the
// matching admits a welfare-improving rotation.
struct NegativeCycleWitness {
  std::vector<int> nodes;         // digraph nodes j_1..j_m, each in 1..n
  std::vector<Rational> lengths;  // lengths[k] = length of nodes[k] -> nodes[k+1]
  Rational total;                 // sum of lengths, < 0
};

// Shortest distances L(i) from the source for nodes 1..n (index i-1), or the
// negative-cycle witness when distances are unbounded below.
using ShortestPathResult =
    std::variant<std::vector<Rational>, NegativeCycleWitness>;

// Builds the digraph above for perfect M on V. Node i corresponds to buyer
// i-1 and to the product matched to that buyer. Throws NotPerfectError.
ConstraintDigraph build_constraint_digraph(const ValuationMatrix& V,
                                           const Matching& M);

// Bellman-Ford from node 0: n relaxation rounds over every edge, then one
// more; a relaxation in the final round yields a negative cycle recovered by
// walking predecessor links (re-summed to confirm it is negative).
ShortestPathResult shortest_paths_or_cycle(const ConstraintDigraph& D);

// The matching is not welfare-maximal. Rotating the cycle - giving each
// buyer in it the product of its predecessor - strictly increases welfare.
struct NotMaximum {
  std::vector<int> cycle_buyers;  // 0-based buyer indices, in cycle order
  std::vector<Rational> edge_lengths;
  Rational total;  // < 0
};

using PricesFromMatchingResult = std::variant<PriceVector, NotMaximum>;

// Builds a market-clearing price vector that induces the given perfect
// matching, by solving the payoff difference constraints via shortest paths.
// Fails with a NotMaximum certificate exactly when M is not welfare-maximal.
// Throws NotPerfectError if |M| < n.
PricesFromMatchingResult prices_from_matching(const ValuationMatrix& V,
                                              const Matching& M);

// Applies a NotMaximum witness: each buyer on the cycle takes the product of
// the buyer before it. The result is perfect and has strictly greater welfare.
Matching rotate_cycle(const Matching& M, const std::vector<int>& cycle_buyers);

// p + (t, ..., t). Leaves the preferred-product graph unchanged.
PriceVector diagonal_shift(const PriceVector& p, const Rational& t);

// alpha*p + (1-alpha)*q. Throws AlphaOutOfRangeError unless 0 <= alpha <= 1,
// DimensionMismatchError unless |p| == |q|.
PriceVector convex_combine(const PriceVector& p, const PriceVector& q,
                           const Rational& alpha);

// Coordinate-wise max / min. Throw DimensionMismatchError unless |p| == |q|.
PriceVector elementwise_max(const PriceVector& p, const PriceVector& q);
PriceVector elementwise_min(const PriceVector& p, const PriceVector& q);

// Shifts so the minimum coordinate becomes zero. Never applied implicitly.
PriceVector normalize(const PriceVector& p);

}  // namespace marketclear

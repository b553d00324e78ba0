#pragma once

// Construction helpers and the shared demo market used across the suites.

#include <utility>
#include <vector>

#include "marketclear/market.hpp"

namespace testsupport {

using marketclear::Matching;
using marketclear::PriceVector;
using marketclear::Rational;
using marketclear::ValuationMatrix;

inline ValuationMatrix matrix(const std::vector<std::vector<long long>>& rows) {
  std::vector<std::vector<Rational>> exact;
  exact.reserve(rows.size());
  for (const auto& row : rows) exact.emplace_back(row.begin(), row.end());
  return ValuationMatrix::from_rows(exact);
}

inline PriceVector prices(const std::vector<long long>& values) {
  return PriceVector(values.begin(), values.end());
}

// Three-buyer market whose unique maximum matching {(0,0), (1,2), (2,1)}
// has welfare 23; the vector (3,1,0) clears it with payoff rows
// (9,3,2), (5,6,6), (4,4,2).
inline ValuationMatrix demo_market() {
  return matrix({{12, 4, 2}, {8, 7, 6}, {7, 5, 2}});
}

}  // namespace testsupport

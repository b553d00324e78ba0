#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "marketclear/market.hpp"
#include "marketclear/matching.hpp"

namespace marketclear {

// One verified claim: its stable id, whether it held, and a JSON
// counterexample payload when it did not (empty on pass). The payload always
// replays through the core operations as a genuine violation.
struct CheckEntry {
  std::string claim;
  bool pass = false;
  std::string counterexample;  // JSON object text, "" when pass
};

struct VerificationReport {
  std::string check;           // which checker produced this report
  int n = 0;                   // market size
  std::string valuation_hash;  // stable 64-bit content hash, hex
  std::uint64_t seed = 0;      // RNG seed used, 0 when the check is not random
  std::vector<CheckEntry> checks;

  bool all_passed() const;
};

// Content hash of the matrix (size plus exact entries), stable across runs.
std::string valuation_hash(const ValuationMatrix& V);

// Asserts that the matchings induced by clearing prices p form a nonempty
// subset of the welfare-maximal set. Throws NotClearingError if p does not
// clear, OracleCapExceededError if n > oracle_cap.
VerificationReport check_property1(const ValuationMatrix& V, const PriceVector& p,
                                   int oracle_cap = kDefaultOracleCap);

// Asserts that two clearing vectors induce exactly the same matching set.
VerificationReport check_lemma1(const ValuationMatrix& V, const PriceVector& p,
                                const PriceVector& q,
                                int oracle_cap = kDefaultOracleCap);

// Asserts closure of the clearing-price space: `samples` random diagonal
// shifts and convex combinations (drawn from the seeded generator), plus the
// element-wise max and min of p and q, all clear the market.
VerificationReport check_theorem1(const ValuationMatrix& V, const PriceVector& p,
                                  const PriceVector& q, int samples,
                                  std::uint64_t seed);

// Asserts the induced set of any single clearing vector equals the full
// welfare-maximal set.
VerificationReport check_theorem2(const ValuationMatrix& V, const PriceVector& p,
                                  int oracle_cap = kDefaultOracleCap);

// Asserts every matching induced by clearing prices attains the maximum
// welfare value.
VerificationReport check_fact1(const ValuationMatrix& V, const PriceVector& p,
                               int oracle_cap = kDefaultOracleCap);

// Seeded instance generator used by the randomized suites: integer
// valuations uniform in [0, max_value]. Small values make ties, and
// therefore multiple maximum matchings, likely.
ValuationMatrix random_market(int n, int max_value, std::mt19937_64& rng);

// Copies one buyer row over another (distinct) one, guaranteeing at least
// two maximum matchings for n >= 2.
ValuationMatrix duplicate_random_row(const ValuationMatrix& V,
                                     std::mt19937_64& rng);

// Uniform rational in [0, 1] (denominator up to 12).
Rational random_alpha(std::mt19937_64& rng);

// Uniform rational in [-bound, bound] (denominator up to 12).
Rational random_shift(std::mt19937_64& rng, const Rational& bound);

}  // namespace marketclear

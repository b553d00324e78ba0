#include "marketclear/verify.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>

#include "marketclear/errors.hpp"
#include "marketclear/pricing.hpp"

namespace marketclear {

using nlohmann::json;

namespace {

json prices_json(const PriceVector& p) {
  json out = json::array();
  for (const Rational& x : p) out.push_back(to_string(x));
  return out;
}

json matching_json(const Matching& m) {
  json out = json::array();
  for (auto [b, p] : m.pairs()) out.push_back(json::array({b, p}));
  return out;
}

json matching_set_json(const MatchingSet& set) {
  json out = json::array();
  for (const Matching& m : set.matchings()) out.push_back(matching_json(m));
  return out;
}

void require_clearing(const ValuationMatrix& V, const PriceVector& p,
                      const std::string& which) {
  if (!is_market_clearing(V, p))
    throw NotClearingError(which, "price vector " + which +
                                      " does not clear the market");
}

// The enumeration cap is tied to the oracle cap: a preferred graph over n
// buyers has at most n! perfect matchings.
int enumeration_room(int oracle_cap) {
  int room = 1;
  for (int k = 2; k <= oracle_cap; ++k) room *= k;
  return room;
}

MatchingSet induced_or_throw(const ValuationMatrix& V, const PriceVector& p,
                             int oracle_cap) {
  auto result = induced_matchings(V, p, enumeration_room(oracle_cap));
  if (std::holds_alternative<CapExceeded>(result))
    throw Error("induced-set enumeration exceeded its n! bound");
  return std::get<MatchingSet>(std::move(result));
}

VerificationReport make_report(const std::string& check,
                               const ValuationMatrix& V, std::uint64_t seed) {
  VerificationReport report;
  report.check = check;
  report.n = V.size();
  report.valuation_hash = valuation_hash(V);
  report.seed = seed;
  return report;
}

void add_entry(VerificationReport& report, std::string claim, bool pass,
               const json& counterexample) {
  report.checks.push_back(
      {std::move(claim), pass, pass ? std::string() : counterexample.dump()});
}

}  // namespace

bool VerificationReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckEntry& e) { return e.pass; });
}

std::string valuation_hash(const ValuationMatrix& V) {
  // FNV-1a over the canonical text form.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= ';';
    h *= 1099511628211ull;
  };
  mix(std::to_string(V.size()));
  for (const Rational& v : V.raw()) mix(to_string(v));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

VerificationReport check_property1(const ValuationMatrix& V,
                                   const PriceVector& p, int oracle_cap) {
  require_clearing(V, p, "p");
  VerificationReport report = make_report("property1", V, 0);

  MatchingSet induced = induced_or_throw(V, p, oracle_cap);
  MaxMatchingsResult oracle = brute_force_max_matchings(V, oracle_cap);

  add_entry(report, "pm_nonempty", !induced.empty(),
            json{{"prices", prices_json(p)}});

  json subset_fail;
  bool subset = true;
  for (const Matching& m : induced.matchings())
    if (!oracle.matchings.contains(m)) {
      subset = false;
      subset_fail = json{{"prices", prices_json(p)},
                         {"matching", matching_json(m)},
                         {"welfare", to_string(social_welfare(V, m))},
                         {"max_welfare", to_string(oracle.welfare)}};
      break;
    }
  add_entry(report, "pm_subset_of_max", subset, subset_fail);
  return report;
}

VerificationReport check_lemma1(const ValuationMatrix& V, const PriceVector& p,
                                const PriceVector& q, int oracle_cap) {
  require_clearing(V, p, "p");
  require_clearing(V, q, "q");
  VerificationReport report = make_report("lemma1", V, 0);

  MatchingSet from_p = induced_or_throw(V, p, oracle_cap);
  MatchingSet from_q = induced_or_throw(V, q, oracle_cap);

  json fail;
  if (from_p != from_q) {
    json only_p = json::array(), only_q = json::array();
    for (const Matching& m : from_p.matchings())
      if (!from_q.contains(m)) only_p.push_back(matching_json(m));
    for (const Matching& m : from_q.matchings())
      if (!from_p.contains(m)) only_q.push_back(matching_json(m));
    fail = json{{"p", prices_json(p)},
                {"q", prices_json(q)},
                {"only_induced_by_p", only_p},
                {"only_induced_by_q", only_q}};
  }
  add_entry(report, "pm_sets_equal", from_p == from_q, fail);
  return report;
}

VerificationReport check_theorem1(const ValuationMatrix& V,
                                  const PriceVector& p, const PriceVector& q,
                                  int samples, std::uint64_t seed) {
  require_clearing(V, p, "p");
  require_clearing(V, q, "q");
  VerificationReport report = make_report("theorem1", V, seed);
  std::mt19937_64 rng(seed);
  const Rational bound = V.max_value();

  bool shifts_ok = true;
  json shift_fail;
  for (int k = 0; k < samples && shifts_ok; ++k) {
    Rational t = random_shift(rng, bound);
    PriceVector r = diagonal_shift(p, t);
    if (!is_market_clearing(V, r)) {
      shifts_ok = false;
      shift_fail = json{{"transform", "diagonal_shift"},
                        {"t", to_string(t)},
                        {"result_prices", prices_json(r)}};
    }
  }
  add_entry(report, "diagonal_shift_clearing", shifts_ok, shift_fail);

  bool combos_ok = true;
  json combo_fail;
  for (int k = 0; k < samples && combos_ok; ++k) {
    Rational alpha = random_alpha(rng);
    PriceVector r = convex_combine(p, q, alpha);
    if (!is_market_clearing(V, r)) {
      combos_ok = false;
      combo_fail = json{{"transform", "convex_combine"},
                        {"alpha", to_string(alpha)},
                        {"result_prices", prices_json(r)}};
    }
  }
  add_entry(report, "convex_combination_clearing", combos_ok, combo_fail);

  PriceVector hi = elementwise_max(p, q);
  add_entry(report, "elementwise_max_clearing", is_market_clearing(V, hi),
            json{{"transform", "elementwise_max"},
                 {"result_prices", prices_json(hi)}});
  PriceVector lo = elementwise_min(p, q);
  add_entry(report, "elementwise_min_clearing", is_market_clearing(V, lo),
            json{{"transform", "elementwise_min"},
                 {"result_prices", prices_json(lo)}});
  return report;
}

VerificationReport check_theorem2(const ValuationMatrix& V,
                                  const PriceVector& p, int oracle_cap) {
  require_clearing(V, p, "p");
  VerificationReport report = make_report("theorem2", V, 0);

  MatchingSet induced = induced_or_throw(V, p, oracle_cap);
  MaxMatchingsResult oracle = brute_force_max_matchings(V, oracle_cap);

  json fail;
  if (induced != oracle.matchings) {
    json missing = json::array(), extra = json::array();
    for (const Matching& m : oracle.matchings.matchings())
      if (!induced.contains(m)) missing.push_back(matching_json(m));
    for (const Matching& m : induced.matchings())
      if (!oracle.matchings.contains(m)) extra.push_back(matching_json(m));
    fail = json{{"prices", prices_json(p)},
                {"missing_from_induced", missing},
                {"extra_in_induced", extra},
                {"max_set", matching_set_json(oracle.matchings)}};
  }
  add_entry(report, "pm_equals_max_set", induced == oracle.matchings, fail);
  return report;
}

VerificationReport check_fact1(const ValuationMatrix& V, const PriceVector& p,
                               int oracle_cap) {
  require_clearing(V, p, "p");
  VerificationReport report = make_report("fact1", V, 0);

  MatchingSet induced = induced_or_throw(V, p, oracle_cap);
  MaxMatchingsResult oracle = brute_force_max_matchings(V, oracle_cap);

  bool ok = true;
  json fail;
  for (const Matching& m : induced.matchings()) {
    Rational w = social_welfare(V, m);
    if (w != oracle.welfare) {
      ok = false;
      fail = json{{"prices", prices_json(p)},
                  {"matching", matching_json(m)},
                  {"welfare", to_string(w)},
                  {"max_welfare", to_string(oracle.welfare)}};
      break;
    }
  }
  add_entry(report, "induced_welfare_is_max", ok, fail);
  return report;
}

ValuationMatrix random_market(int n, int max_value, std::mt19937_64& rng) {
  std::vector<Rational> values;
  values.reserve(static_cast<std::size_t>(n) * n);
  for (int k = 0; k < n * n; ++k)
    values.emplace_back(static_cast<long long>(
        rng() % static_cast<std::uint64_t>(max_value + 1)));
  return ValuationMatrix(n, std::move(values));
}

ValuationMatrix duplicate_random_row(const ValuationMatrix& V,
                                     std::mt19937_64& rng) {
  const int n = V.size();
  if (n < 2) throw Error("row duplication needs a market of size at least 2");
  int src = static_cast<int>(rng() % n);
  int dst = static_cast<int>(rng() % (n - 1));
  if (dst >= src) ++dst;
  std::vector<Rational> values = V.raw();
  for (int j = 0; j < n; ++j)
    values[static_cast<std::size_t>(dst) * n + j] = V.value(src, j);
  return ValuationMatrix(n, std::move(values));
}

Rational random_alpha(std::mt19937_64& rng) {
  auto den = static_cast<long long>(1 + rng() % 12);
  auto num = static_cast<long long>(rng() % (den + 1));
  return Rational(num, den);
}

Rational random_shift(std::mt19937_64& rng, const Rational& bound) {
  auto den = static_cast<long long>(1 + rng() % 12);
  // |num| <= floor(bound * den) keeps |t| <= bound exactly.
  BigInt limit = numerator(bound) * den / denominator(bound);
  BigInt span = 2 * limit + 1;
  BigInt offset = BigInt(rng()) % span;  // desk-scale spans; bias immaterial
  return Rational(offset - limit, BigInt(den));
}

}  // namespace marketclear

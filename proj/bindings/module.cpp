#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "marketclear/errors.hpp"
#include "marketclear/market.hpp"
#include "marketclear/matching.hpp"
#include "marketclear/pricing.hpp"
#include "marketclear/verify.hpp"

namespace py = pybind11;
using namespace marketclear;

namespace {

// Rationals cross the boundary as fractions.Fraction; exactness survives in
// both directions because the bridge is the literal "a/b" text.
py::object fraction_type() {
  return py::module_::import("fractions").attr("Fraction");
}

py::object to_py(const Rational& r) { return fraction_type()(to_string(r)); }

Rational to_rational(const py::handle& value) {
  if (py::isinstance<py::float_>(value))
    throw py::type_error(
        "floats are not exact; pass an int, a string like '5/4', or a "
        "fractions.Fraction");
  return parse_rational(py::str(value).cast<std::string>());
}

ValuationMatrix matrix_from_py(const py::iterable& rows) {
  std::vector<std::vector<Rational>> parsed;
  for (const py::handle& row : rows) {
    std::vector<Rational> cells;
    for (const py::handle& cell : row.cast<py::iterable>())
      cells.push_back(to_rational(cell));
    parsed.push_back(std::move(cells));
  }
  return ValuationMatrix::from_rows(parsed);
}

PriceVector prices_from_py(const py::iterable& values) {
  PriceVector p;
  for (const py::handle& value : values) p.push_back(to_rational(value));
  return p;
}

Matching matching_from_py(const py::iterable& pairs) {
  std::vector<std::pair<int, int>> edges;
  for (const py::handle& pair : pairs)
    edges.push_back(pair.cast<std::pair<int, int>>());
  return Matching(std::move(edges));
}

py::list prices_to_py(const PriceVector& p) {
  py::list out;
  for (const Rational& x : p) out.append(to_py(x));
  return out;
}

py::list matching_to_py(const Matching& m) {
  py::list out;
  for (auto [b, p] : m.pairs()) out.append(py::make_tuple(b, p));
  return out;
}

py::list matching_set_to_py(const MatchingSet& set) {
  py::list out;
  for (const Matching& m : set.matchings()) out.append(matching_to_py(m));
  return out;
}

py::dict report_to_py(const VerificationReport& report) {
  py::list claims;
  for (const CheckEntry& entry : report.checks) {
    py::dict claim;
    claim["claim"] = entry.claim;
    claim["pass"] = entry.pass;
    if (!entry.pass) claim["counterexample"] = entry.counterexample;
    claims.append(std::move(claim));
  }
  py::dict out;
  out["check"] = report.check;
  out["n"] = report.n;
  out["valuation_hash"] = report.valuation_hash;
  out["seed"] = report.seed;
  out["pass"] = report.all_passed();
  out["claims"] = std::move(claims);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Exact matching-market solver: market-clearing prices, maximum "
      "matchings, and structural checks over square valuation matrices. "
      "Buyer/product indices are 0-based; all values are exact rationals.";

  py::register_exception<ParseError>(m, "MarketParseError", PyExc_ValueError);
  py::register_exception<DimensionMismatchError>(m, "DimensionMismatchError",
                                                 PyExc_ValueError);
  py::register_exception<IndexOutOfRangeError>(m, "IndexOutOfRangeError",
                                               PyExc_IndexError);
  py::register_exception<InvalidMarketError>(m, "InvalidMarketError",
                                             PyExc_ValueError);
  py::register_exception<AlphaOutOfRangeError>(m, "AlphaOutOfRangeError",
                                               PyExc_ValueError);
  py::register_exception<NotPerfectError>(m, "NotPerfectError", PyExc_ValueError);
  py::register_exception<NotClearingError>(m, "NotClearingError", PyExc_ValueError);
  py::register_exception<OracleCapExceededError>(m, "OracleCapExceededError",
                                                 PyExc_ValueError);

  m.def(
      "social_welfare",
      [](const py::iterable& valuations, const py::iterable& matching) {
        return to_py(social_welfare(matrix_from_py(valuations),
                                    matching_from_py(matching)));
      },
      py::arg("valuations"), py::arg("matching"),
      "Sum of the matched valuations.");

  m.def(
      "buyer_payoffs",
      [](const py::iterable& valuations, const py::iterable& prices) {
        py::list out;
        for (const Rational& u :
             buyer_payoffs(matrix_from_py(valuations), prices_from_py(prices)))
          out.append(to_py(u));
        return out;
      },
      py::arg("valuations"), py::arg("prices"),
      "Each buyer's best payoff max_j (v_ij - p_j).");

  m.def(
      "preferred_graph",
      [](const py::iterable& valuations, const py::iterable& prices) {
        PreferredProductGraph G =
            preferred_graph(matrix_from_py(valuations), prices_from_py(prices));
        py::list out;
        for (const auto& row : G.preferred) out.append(py::cast(row));
        return out;
      },
      py::arg("valuations"), py::arg("prices"),
      "For each buyer, the sorted list of payoff-maximizing products "
      "(every tie included).");

  m.def(
      "find_perfect_matching",
      [](const py::iterable& valuations, const py::iterable& prices) {
        PerfectMatchingResult result = find_perfect_matching(
            preferred_graph(matrix_from_py(valuations), prices_from_py(prices)));
        py::dict out;
        if (auto* matched = std::get_if<Matching>(&result)) {
          out["matching"] = matching_to_py(*matched);
        } else {
          const auto& witness = std::get<ConstrictedSet>(result);
          out["constricted_buyers"] = py::cast(witness.buyers);
          out["neighborhood"] = py::cast(witness.neighborhood);
        }
        return out;
      },
      py::arg("valuations"), py::arg("prices"),
      "A perfect matching of the preferred graph, or the constricted buyer "
      "set proving none exists.");

  m.def(
      "is_market_clearing",
      [](const py::iterable& valuations, const py::iterable& prices) {
        return is_market_clearing(matrix_from_py(valuations),
                                  prices_from_py(prices));
      },
      py::arg("valuations"), py::arg("prices"));

  m.def(
      "solve_auction",
      [](const py::iterable& valuations) {
        ValuationMatrix V = matrix_from_py(valuations);
        AuctionResult result = solve_auction(V);
        py::dict out;
        out["prices"] = prices_to_py(result.prices);
        out["matching"] = matching_to_py(result.matching);
        out["welfare"] = to_py(social_welfare(V, result.matching));
        out["rounds"] = result.trace.rounds.size();
        return out;
      },
      py::arg("valuations"),
      "Ascending-price auction; returns normalized clearing prices, an "
      "induced maximum matching, its welfare, and the round count.");

  m.def(
      "brute_force_max_matchings",
      [](const py::iterable& valuations, int cap) {
        MaxMatchingsResult result =
            brute_force_max_matchings(matrix_from_py(valuations), cap);
        return py::make_tuple(matching_set_to_py(result.matchings),
                              to_py(result.welfare));
      },
      py::arg("valuations"), py::arg("cap") = kDefaultOracleCap,
      "Exhaustive oracle: (all welfare-maximal matchings, the maximum "
      "welfare).");

  m.def(
      "enumerate_perfect_matchings",
      [](const py::iterable& valuations, const py::iterable& prices, int cap) {
        EnumerationResult result = induced_matchings(
            matrix_from_py(valuations), prices_from_py(prices), cap);
        py::dict out;
        if (auto* exceeded = std::get_if<CapExceeded>(&result)) {
          out["cap_exceeded"] = true;
          out["partial"] = matching_set_to_py(exceeded->partial);
        } else {
          out["matchings"] = matching_set_to_py(std::get<MatchingSet>(result));
        }
        return out;
      },
      py::arg("valuations"), py::arg("prices"),
      py::arg("cap") = kDefaultEnumerationCap,
      "All perfect matchings of the preferred graph under the given prices.");

  m.def(
      "prices_from_matching",
      [](const py::iterable& valuations, const py::iterable& matching) {
        PricesFromMatchingResult result = prices_from_matching(
            matrix_from_py(valuations), matching_from_py(matching));
        py::dict out;
        if (auto* fail = std::get_if<NotMaximum>(&result)) {
          py::list lengths;
          for (const Rational& len : fail->edge_lengths)
            lengths.append(to_py(len));
          py::dict detail;
          detail["cycle_buyers"] = py::cast(fail->cycle_buyers);
          detail["edge_lengths"] = std::move(lengths);
          detail["total"] = to_py(fail->total);
          out["not_maximum"] = std::move(detail);
        } else {
          out["prices"] = prices_to_py(std::get<PriceVector>(result));
        }
        return out;
      },
      py::arg("valuations"), py::arg("matching"),
      "Clearing prices inducing the given perfect matching, or the "
      "negative-cycle certificate that it is not welfare-maximal.");

  m.def(
      "rotate_cycle",
      [](const py::iterable& matching, const std::vector<int>& cycle_buyers) {
        return matching_to_py(rotate_cycle(matching_from_py(matching),
                                           cycle_buyers));
      },
      py::arg("matching"), py::arg("cycle_buyers"),
      "Applies a not-maximum certificate: each cycle buyer takes the "
      "previous buyer's product.");

  m.def(
      "diagonal_shift",
      [](const py::iterable& prices, const py::handle& t) {
        return prices_to_py(diagonal_shift(prices_from_py(prices), to_rational(t)));
      },
      py::arg("prices"), py::arg("t"));

  m.def(
      "convex_combine",
      [](const py::iterable& p, const py::iterable& q, const py::handle& alpha) {
        return prices_to_py(convex_combine(prices_from_py(p), prices_from_py(q),
                                           to_rational(alpha)));
      },
      py::arg("p"), py::arg("q"), py::arg("alpha"));

  m.def(
      "elementwise_max",
      [](const py::iterable& p, const py::iterable& q) {
        return prices_to_py(elementwise_max(prices_from_py(p), prices_from_py(q)));
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "elementwise_min",
      [](const py::iterable& p, const py::iterable& q) {
        return prices_to_py(elementwise_min(prices_from_py(p), prices_from_py(q)));
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "normalize",
      [](const py::iterable& prices) {
        return prices_to_py(normalize(prices_from_py(prices)));
      },
      py::arg("prices"), "Shift so the minimum price is zero.");

  m.def(
      "check_property1",
      [](const py::iterable& valuations, const py::iterable& prices, int cap) {
        return report_to_py(
            check_property1(matrix_from_py(valuations), prices_from_py(prices), cap));
      },
      py::arg("valuations"), py::arg("prices"),
      py::arg("oracle_cap") = kDefaultOracleCap,
      "Induced matchings form a nonempty subset of the maximal set.");

  m.def(
      "check_lemma1",
      [](const py::iterable& valuations, const py::iterable& p,
         const py::iterable& q, int cap) {
        return report_to_py(check_lemma1(matrix_from_py(valuations),
                                         prices_from_py(p), prices_from_py(q),
                                         cap));
      },
      py::arg("valuations"), py::arg("p"), py::arg("q"),
      py::arg("oracle_cap") = kDefaultOracleCap,
      "Two clearing vectors induce identical matching sets.");

  m.def(
      "check_theorem1",
      [](const py::iterable& valuations, const py::iterable& p,
         const py::iterable& q, int samples, std::uint64_t seed) {
        return report_to_py(check_theorem1(matrix_from_py(valuations),
                                           prices_from_py(p), prices_from_py(q),
                                           samples, seed));
      },
      py::arg("valuations"), py::arg("p"), py::arg("q"),
      py::arg("samples") = 25, py::arg("seed") = 42,
      "Shifts, convex combinations, and element-wise max/min of clearing "
      "vectors stay clearing.");

  m.def(
      "check_theorem2",
      [](const py::iterable& valuations, const py::iterable& prices, int cap) {
        return report_to_py(
            check_theorem2(matrix_from_py(valuations), prices_from_py(prices), cap));
      },
      py::arg("valuations"), py::arg("prices"),
      py::arg("oracle_cap") = kDefaultOracleCap,
      "One clearing vector induces every maximum matching.");

  m.def(
      "check_fact1",
      [](const py::iterable& valuations, const py::iterable& prices, int cap) {
        return report_to_py(
            check_fact1(matrix_from_py(valuations), prices_from_py(prices), cap));
      },
      py::arg("valuations"), py::arg("prices"),
      py::arg("oracle_cap") = kDefaultOracleCap,
      "Every induced matching attains the maximum welfare.");
}

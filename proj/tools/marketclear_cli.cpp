// marketclear: solve, price, enumerate, and check matching markets given as
// CSV or JSON valuation files. All arithmetic is exact; every rational in
// the JSON output is a string like "23" or "7/2". Serialized indices are
// 0-based; human-readable diagnostics on stderr use 1-based labels.
//
// Exit codes: 0 ok, 2 parse error, 3 dimension/shape error, 4 matching not
// welfare-maximal, 5 enumeration/oracle cap exceeded, 6 a structural check
// failed (which would mean a library bug).

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "marketclear/errors.hpp"
#include "marketclear/io.hpp"
#include "marketclear/matching.hpp"
#include "marketclear/pricing.hpp"
#include "marketclear/verify.hpp"

namespace {

using nlohmann::json;
using namespace marketclear;

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitShape = 3;
constexpr int kExitNotMaximum = 4;
constexpr int kExitCap = 5;
constexpr int kExitCheckFailed = 6;

struct CommonArgs {
  std::string input;
  std::string format = "auto";
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--input,input", args.input, "market file (CSV or JSON)")
      ->required();
  cmd->add_option("--format", args.format, "input format")
      ->check(CLI::IsMember({"auto", "csv", "json"}))
      ->capture_default_str();
}

MarketFormat to_format(const std::string& name) {
  if (name == "csv") return MarketFormat::Csv;
  if (name == "json") return MarketFormat::Json;
  return MarketFormat::Auto;
}

void emit(const json& out) { std::cout << out.dump() << "\n"; }

int run_solve(const CommonArgs& args) {
  MarketFile file = load_market_file(args.input, to_format(args.format));
  AuctionResult result = solve_auction(file.valuations);
  emit(json{{"prices", prices_to_json(result.prices)},
            {"matching", matching_to_json(result.matching)},
            {"welfare",
             to_string(social_welfare(file.valuations, result.matching))}});
  return kExitOk;
}

int run_verify(const CommonArgs& args) {
  MarketFile file = load_market_file(args.input, to_format(args.format));
  if (!file.prices)
    throw InvalidMarketError("verify needs a \"prices\" array in the market file");
  PerfectMatchingResult result =
      find_perfect_matching(preferred_graph(file.valuations, *file.prices));
  if (auto* witness = std::get_if<ConstrictedSet>(&result)) {
    emit(json{{"clearing", false},
              {"witness",
               {{"constricted_buyers", witness->buyers},
                {"neighborhood", witness->neighborhood}}}});
  } else {
    emit(json{{"clearing", true}});
  }
  return kExitOk;
}

int run_prices(const CommonArgs& args, const std::vector<std::string>& pairs) {
  MarketFile file = load_market_file(args.input, to_format(args.format));
  Matching matching;
  if (!pairs.empty()) {
    std::vector<std::pair<int, int>> edges;
    for (const std::string& text : pairs) {
      auto colon = text.find(':');
      if (colon == std::string::npos)
        throw ParseError("--pair expects buyer:product, got '" + text + "'");
      try {
        edges.emplace_back(std::stoi(text.substr(0, colon)),
                           std::stoi(text.substr(colon + 1)));
      } catch (const std::exception&) {
        throw ParseError("--pair expects integer indices, got '" + text + "'");
      }
    }
    matching = Matching(std::move(edges));
  } else if (file.matching) {
    matching = *file.matching;
  } else {
    throw InvalidMarketError(
        "prices needs a matching: pass --pair flags or a \"matching\" key");
  }

  PricesFromMatchingResult result =
      prices_from_matching(file.valuations, matching);
  if (auto* fail = std::get_if<NotMaximum>(&result)) {
    json lengths = json::array();
    for (const Rational& len : fail->edge_lengths)
      lengths.push_back(to_string(len));
    emit(json{{"not_maximum",
               {{"cycle_buyers", fail->cycle_buyers},
                {"edge_lengths", lengths},
                {"total", to_string(fail->total)}}}});
    return kExitNotMaximum;
  }
  emit(json{{"prices", prices_to_json(std::get<PriceVector>(result))}});
  return kExitOk;
}

int run_enumerate(const CommonArgs& args, int cap) {
  MarketFile file = load_market_file(args.input, to_format(args.format));
  PriceVector prices =
      file.prices ? *file.prices : solve_auction(file.valuations).prices;
  EnumerationResult result = induced_matchings(file.valuations, prices, cap);
  if (auto* exceeded = std::get_if<CapExceeded>(&result)) {
    emit(json{{"cap_exceeded", true},
              {"cap", exceeded->cap},
              {"partial", matching_set_to_json(exceeded->partial)}});
    return kExitCap;
  }
  const auto& set = std::get<MatchingSet>(result);
  json welfare;
  if (!set.empty())
    welfare = to_string(social_welfare(file.valuations, set.matchings().front()));
  emit(json{{"matchings", matching_set_to_json(set)}, {"welfare", welfare}});
  return kExitOk;
}

int run_check(const CommonArgs& args, std::uint64_t seed, int samples) {
  MarketFile file = load_market_file(args.input, to_format(args.format));
  const ValuationMatrix& V = file.valuations;

  AuctionResult auction = solve_auction(V);
  const PriceVector& p = auction.prices;

  MaxMatchingsResult oracle = brute_force_max_matchings(V);
  PricesFromMatchingResult alt =
      prices_from_matching(V, oracle.matchings.matchings().front());
  // A maximum matching always admits clearing prices.
  const PriceVector& q = std::get<PriceVector>(alt);

  std::vector<VerificationReport> reports;
  reports.push_back(check_property1(V, p));
  reports.push_back(check_fact1(V, p));
  reports.push_back(check_theorem2(V, p));
  reports.push_back(check_lemma1(V, p, q));
  reports.push_back(check_theorem1(V, p, q, samples, seed));

  bool all = true;
  for (const VerificationReport& report : reports) {
    std::cout << report_to_json_line(report) << "\n";
    all = all && report.all_passed();
  }
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact matching-market tool: clearing prices, maximum matchings, and "
      "structural checks over square valuation matrices"};
  app.require_subcommand(1);

  CommonArgs solve_args, verify_args, prices_args, enum_args, check_args;
  std::vector<std::string> pair_flags;
  int cap = kDefaultEnumerationCap;
  std::uint64_t seed = 42;
  int samples = 25;

  CLI::App* solve =
      app.add_subcommand("solve", "compute clearing prices and a maximum matching");
  add_common(solve, solve_args);

  CLI::App* verify = app.add_subcommand(
      "verify", "test whether the file's prices clear the market");
  add_common(verify, verify_args);

  CLI::App* prices = app.add_subcommand(
      "prices", "derive clearing prices that induce a given perfect matching");
  add_common(prices, prices_args);
  prices->add_option("--pair", pair_flags,
                     "matching edge buyer:product, 0-based (repeatable)");

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "list every maximum matching (all matchings induced by "
                   "the file's prices, or by solved prices)");
  add_common(enumerate, enum_args);
  enumerate->add_option("--cap", cap, "abort after this many matchings")
      ->capture_default_str();

  CLI::App* check = app.add_subcommand(
      "check", "run all structural checks against the exhaustive oracle");
  add_common(check, check_args);
  check->add_option("--seed", seed, "RNG seed for sampled transforms")
      ->capture_default_str();
  check->add_option("--samples", samples, "sampled shifts/combinations per check")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (verify->parsed()) return run_verify(verify_args);
    if (prices->parsed()) return run_prices(prices_args, pair_flags);
    if (enumerate->parsed()) return run_enumerate(enum_args, cap);
    if (check->parsed()) return run_check(check_args, seed, samples);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const DimensionMismatchError& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return kExitShape;
  } catch (const IndexOutOfRangeError& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return kExitShape;
  } catch (const NotPerfectError& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return kExitShape;
  } catch (const InvalidMarketError& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return kExitShape;
  } catch (const OracleCapExceededError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

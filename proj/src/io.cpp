#include "marketclear/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "marketclear/errors.hpp"

namespace marketclear {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

MarketFile parse_csv(std::istream& in) {
  std::vector<std::vector<Rational>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<Rational> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::string token = trim(cell);
      if (token.empty())
        throw ParseError("empty cell in row " + std::to_string(rows.size() + 1));
      row.push_back(parse_rational(token));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("market file contains no rows");
  return MarketFile{ValuationMatrix::from_rows(rows), std::nullopt, std::nullopt};
}

Rational rational_from_json(const json& value, const std::string& where) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer())
    return Rational(value.get<long long>());
  if (value.is_number_unsigned())
    return Rational(BigInt(value.get<unsigned long long>()));
  if (value.is_number_float())
    throw ParseError(where +
                     ": non-integral numbers are ambiguous; write the value "
                     "as a string like \"5/4\" or \"1.25\"");
  throw ParseError(where + ": expected a rational value, got " +
                   std::string(value.type_name()));
}

MarketFile parse_json(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("valuations"))
    throw ParseError("expected an object with a \"valuations\" key");

  const json& vals = doc["valuations"];
  if (!vals.is_array() || vals.empty())
    throw ParseError("\"valuations\" must be a nonempty array of rows");
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i].is_array())
      throw ParseError("valuations row " + std::to_string(i) +
                       " is not an array");
    std::vector<Rational> row;
    for (std::size_t j = 0; j < vals[i].size(); ++j)
      row.push_back(rational_from_json(
          vals[i][j],
          "valuations[" + std::to_string(i) + "][" + std::to_string(j) + "]"));
    rows.push_back(std::move(row));
  }

  MarketFile file{ValuationMatrix::from_rows(rows), std::nullopt, std::nullopt};

  if (doc.contains("prices")) {
    const json& prices = doc["prices"];
    if (!prices.is_array()) throw ParseError("\"prices\" must be an array");
    PriceVector p;
    for (std::size_t j = 0; j < prices.size(); ++j)
      p.push_back(rational_from_json(prices[j], "prices[" + std::to_string(j) + "]"));
    file.prices = std::move(p);
  }

  if (doc.contains("matching")) {
    const json& pairs = doc["matching"];
    if (!pairs.is_array())
      throw ParseError("\"matching\" must be an array of [buyer, product] pairs");
    std::vector<std::pair<int, int>> edges;
    for (const json& pair : pairs) {
      if (!pair.is_array() || pair.size() != 2 ||
          !pair[0].is_number_integer() || !pair[1].is_number_integer())
        throw ParseError("matching entries must be [buyer, product] index pairs");
      edges.emplace_back(pair[0].get<int>(), pair[1].get<int>());
    }
    file.matching = Matching(std::move(edges));
  }
  return file;
}

}  // namespace

MarketFile parse_market(std::istream& in, MarketFormat format) {
  if (format == MarketFormat::Auto) {
    // Sniff: a JSON document starts with '{'.
    int c = in.peek();
    while (c != EOF && std::isspace(c)) {
      in.get();
      c = in.peek();
    }
    format = (c == '{') ? MarketFormat::Json : MarketFormat::Csv;
  }
  return format == MarketFormat::Json ? parse_json(in) : parse_csv(in);
}

MarketFile load_market_file(const std::string& path, MarketFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open market file: " + path);
  return parse_market(in, format);
}

json prices_to_json(const PriceVector& p) {
  json out = json::array();
  for (const Rational& x : p) out.push_back(to_string(x));
  return out;
}

json matching_to_json(const Matching& m) {
  json out = json::array();
  for (auto [b, p] : m.pairs()) out.push_back(json::array({b, p}));
  return out;
}

json matching_set_to_json(const MatchingSet& set) {
  json out = json::array();
  for (const Matching& m : set.matchings()) out.push_back(matching_to_json(m));
  return out;
}

std::string report_to_json_line(const VerificationReport& report) {
  json claims = json::array();
  for (const CheckEntry& entry : report.checks) {
    json claim{{"claim", entry.claim}, {"pass", entry.pass}};
    if (!entry.pass)
      claim["counterexample"] = json::parse(entry.counterexample);
    claims.push_back(std::move(claim));
  }
  json line{{"check", report.check},
            {"instance",
             {{"n", report.n},
              {"valuation_hash", report.valuation_hash},
              {"seed", report.seed}}},
            {"pass", report.all_passed()},
            {"claims", std::move(claims)}};
  return line.dump();
}

}  // namespace marketclear

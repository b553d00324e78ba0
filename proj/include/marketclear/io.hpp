#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "marketclear/market.hpp"
#include "marketclear/verify.hpp"

namespace marketclear {

// A parsed market instance. Indices in serialized form are 0-based.
struct MarketFile {
  ValuationMatrix valuations;
  std::optional<PriceVector> prices;   // JSON key "prices"
  std::optional<Matching> matching;    // JSON key "matching", [[buyer, product], ...]
};

enum class MarketFormat { Auto, Csv, Json };

// CSV: n rows of n comma-separated rational literals (integer, "a/b", or a
// finite decimal). JSON: {"valuations": [[...]], "prices": [...],
// "matching": [[b, p], ...]} where each value is an integer or a rational
// literal string; bare non-integral numbers are rejected to keep parsing
// exact. Auto sniffs JSON by a leading '{'.
MarketFile parse_market(std::istream& in, MarketFormat format);
MarketFile load_market_file(const std::string& path,
                            MarketFormat format = MarketFormat::Auto);

nlohmann::json prices_to_json(const PriceVector& p);
nlohmann::json matching_to_json(const Matching& m);
nlohmann::json matching_set_to_json(const MatchingSet& set);

// One JSON object per line, for streaming consumption.
std::string report_to_json_line(const VerificationReport& report);

}  // namespace marketclear

#include "marketclear/rational.hpp"

#include <algorithm>
#include <cctype>

#include "marketclear/errors.hpp"

namespace marketclear {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void bad_literal(std::string_view text) {
  throw ParseError("not a rational literal: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad_literal(text);

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_literal(text);
    BigInt d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    value = Rational(BigInt{std::string(num)}, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) bad_literal(text);
    if (!whole.empty() && !all_digits(whole)) bad_literal(text);
    if (!frac.empty() && !all_digits(frac)) bad_literal(text);
    BigInt num = whole.empty() ? BigInt(0) : BigInt{std::string(whole)};
    BigInt den = 1;
    for (char c : frac) {
      num = num * 10 + (c - '0');
      den *= 10;
    }
    value = Rational(num, den);
  } else {
    if (!all_digits(s)) bad_literal(text);
    value = Rational(BigInt{std::string(s)});
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& r) {
  std::string num = numerator(r).str();
  if (denominator(r) == 1) return num;
  return num + "/" + denominator(r).str();
}

}  // namespace marketclear

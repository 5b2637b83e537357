#include "dyncomp/rational.hpp"

#include "dyncomp/error.hpp"

#include <cctype>
#include <limits>

namespace dyncomp {

namespace {

BigInt parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw Error(ErrorCode::kParseError, "malformed rational '" + std::string(whole) + "'");
  }
  BigInt value = 0;
  for (; pos < text.size(); ++pos) {
    if (!std::isdigit(static_cast<unsigned char>(text[pos]))) {
      throw Error(ErrorCode::kParseError, "malformed rational '" + std::string(whole) + "'");
    }
    value = value * 10 + (text[pos] - '0');
  }
  return negative ? BigInt(-value) : value;
}

std::int64_t saturate(const BigInt& v) {
  static const BigInt kMax = std::numeric_limits<std::int64_t>::max();
  static const BigInt kMin = std::numeric_limits<std::int64_t>::min();
  if (v > kMax) return std::numeric_limits<std::int64_t>::max();
  if (v < kMin) return std::numeric_limits<std::int64_t>::min();
  return v.convert_to<std::int64_t>();
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  BigInt num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
    throw Error(ErrorCode::kParseError, "malformed rational '" + std::string(text) + "'");
  }
  BigInt den = parse_integer(den_text, text);
  if (den == 0) {
    throw Error(ErrorCode::kParseError, "zero denominator in '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

std::string format_rational(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::int64_t floor_saturated(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  BigInt q = num / den;  // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return saturate(q);
}

std::int64_t below_saturated(const Rational& value) {
  const BigInt& num = boost::multiprecision::numerator(value);
  const BigInt& den = boost::multiprecision::denominator(value);
  BigInt q = num / den;
  if (num < 0 && q * den != num) q -= 1;
  // q = floor(value); strictly below means q - 1 when value is an integer.
  if (q * den == num) q -= 1;
  return saturate(q);
}

}  // namespace dyncomp

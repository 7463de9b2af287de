#include "levy_chaos/scalar.hpp"

#include "levy_chaos/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace levy_chaos {
namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw Error("scalar.parse", "not a number: '" + std::string(text) + "'");
}

Rational parse_decimal(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long long scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) bad_number(text);
  long long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') bad_number(text);
    ++pos;
    std::string_view rest = text.substr(pos);
    if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
    auto [end, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
    if (ec != std::errc() || end != rest.data() + rest.size() || rest.empty()) bad_number(text);
  }
  const auto first = std::min(digits.find_first_not_of('0'), digits.size() - 1);
  BigInt numerator(digits.substr(first));
  exponent -= scale;
  if (std::llabs(exponent) > 4000) bad_number(text);
  BigInt power = 1;
  for (long long i = 0; i < std::llabs(exponent); ++i) power *= 10;
  Rational value = exponent >= 0 ? Rational(numerator * power) : Rational(numerator, power);
  return negative ? Rational(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (text.empty()) bad_number(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text);
  const Rational num = parse_decimal(trim(text.substr(0, slash)));
  const Rational den = parse_decimal(trim(text.substr(slash + 1)));
  if (den.is_zero()) throw Error("scalar.parse", "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::string format_scalar(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  (void)ec;
  return std::string(buf.data(), end);
}

std::string format_scalar(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace levy_chaos

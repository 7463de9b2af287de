#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

namespace levy_chaos {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// The two numeric fields every coefficient engine is instantiated over:
/// exact rationals for identity checks and doubles for simulation.
template <class S>
concept Scalar = std::same_as<S, double> || std::same_as<S, Rational>;

template <Scalar S>
S from_rational(const Rational& q) {
  if constexpr (std::same_as<S, double>) {
    return q.convert_to<double>();
  } else {
    return q;
  }
}

template <Scalar S>
S from_integer(const BigInt& z) {
  if constexpr (std::same_as<S, double>) {
    return z.convert_to<double>();
  } else {
    return Rational(z);
  }
}

template <Scalar S>
S from_int(long long v) {
  return S(v);
}

inline double to_double(double v) { return v; }
inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline bool is_zero(double v) { return v == 0.0; }
inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline double abs_value(double v) { return v < 0 ? -v : v; }
inline Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

/// Parses "3", "-0.025", "1e-4", "2.5E+3" or "1/40" into an exact rational.
/// Decimal notation is read digit-for-digit, so "0.1" is exactly 1/10.
Rational parse_rational(std::string_view text);

/// Shortest representation that reads back to the same double.
std::string format_scalar(double v);
/// "p/q", or "p" when the denominator is one.
std::string format_scalar(const Rational& q);

}  // namespace levy_chaos

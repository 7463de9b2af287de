#pragma once

#include "levy_chaos/scalar.hpp"

#include <algorithm>
#include <initializer_list>
#include <vector>

namespace levy_chaos {

/// Polynomial q_0 + q_1 t + ... + q_d t^d in elapsed time. Trailing zero
/// coefficients are always trimmed, so the zero polynomial has no
/// coefficients and equality is coefficient-wise.
template <Scalar S>
class TimePolynomial {
 public:
  TimePolynomial() = default;
  explicit TimePolynomial(std::vector<S> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  TimePolynomial(std::initializer_list<S> coeffs) : coeffs_(coeffs) { trim(); }

  static TimePolynomial constant(S value) { return TimePolynomial(std::vector<S>{std::move(value)}); }
  static TimePolynomial monomial(S value, unsigned power) {
    std::vector<S> c(power + 1, S(0));
    c[power] = std::move(value);
    return TimePolynomial(std::move(c));
  }

  const std::vector<S>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }

  /// Coefficient of t^r (zero past the degree).
  S coefficient(unsigned r) const { return r < coeffs_.size() ? coeffs_[r] : S(0); }

  S operator()(const S& t) const {
    S acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  /// Antiderivative vanishing at zero.
  TimePolynomial integral() const {
    std::vector<S> c(coeffs_.size() + 1, S(0));
    for (std::size_t r = 0; r < coeffs_.size(); ++r) c[r + 1] = coeffs_[r] / S(static_cast<long long>(r + 1));
    return TimePolynomial(std::move(c));
  }

  TimePolynomial& operator+=(const TimePolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
    for (std::size_t r = 0; r < o.coeffs_.size(); ++r) coeffs_[r] += o.coeffs_[r];
    trim();
    return *this;
  }
  TimePolynomial& operator-=(const TimePolynomial& o) {
    if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), S(0));
    for (std::size_t r = 0; r < o.coeffs_.size(); ++r) coeffs_[r] -= o.coeffs_[r];
    trim();
    return *this;
  }
  TimePolynomial& operator*=(const S& k) {
    for (auto& c : coeffs_) c *= k;
    trim();
    return *this;
  }

  friend TimePolynomial operator+(TimePolynomial a, const TimePolynomial& b) { return a += b; }
  friend TimePolynomial operator-(TimePolynomial a, const TimePolynomial& b) { return a -= b; }
  friend TimePolynomial operator*(TimePolynomial a, const S& k) { return a *= k; }
  friend TimePolynomial operator*(const S& k, TimePolynomial a) { return a *= k; }
  friend TimePolynomial operator*(const TimePolynomial& a, const TimePolynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<S> c(a.coeffs_.size() + b.coeffs_.size() - 1, S(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return TimePolynomial(std::move(c));
  }

  friend bool operator==(const TimePolynomial&, const TimePolynomial&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && is_zero_value(coeffs_.back())) coeffs_.pop_back();
  }
  static bool is_zero_value(const S& v) { return levy_chaos::is_zero(v); }

  std::vector<S> coeffs_;
};

}  // namespace levy_chaos

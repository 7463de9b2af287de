#pragma once

#include "levy_chaos/combinatorics.hpp"
#include "levy_chaos/error.hpp"
#include "levy_chaos/models.hpp"
#include "levy_chaos/time_polynomial.hpp"
#include "levy_chaos/triangular.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace levy_chaos {

/// Which family of integrators the terms of an expansion refer to.
///   Y               compensated power jumps X^(i) - m_i t
///   H               orthogonalized combinations of the Y^(i)
///   Noncompensated  raw power jump sums [X]^(i)
///   Prm             Y-coefficients read as integrands against the jump measure
enum class Basis { Y, H, Noncompensated, Prm };

std::string_view basis_name(Basis basis);
/// Accepts y, h, prm, noncompensated and its alias jamshidian (any case).
Basis parse_basis(std::string_view text);

/// (X_{t+t0} - X_{t0})^n = sum_theta terms[theta](t) S_theta + constant(t).
template <Scalar S>
struct Expansion {
  unsigned order = 0;
  Basis basis = Basis::Y;
  std::map<IndexTuple, TimePolynomial<S>> terms;
  TimePolynomial<S> constant;
  /// Compensators of the integrators. For Y and H these are sigma-adjusted.
  MomentVector<S> moments;
  /// a_{i,j} with H^(i) = sum_j a_{i,j} Y^(j); present only for basis H.
  std::optional<LowerTriangular<S>> orthogonalizer;

  TimePolynomial<S> term(const IndexTuple& theta) const {
    auto it = terms.find(theta);
    return it == terms.end() ? TimePolynomial<S>{} : it->second;
  }

  friend bool operator==(const Expansion&, const Expansion&) = default;
};

/// (1/l!) * multinomial(parts) * multinomial(multiplicities): the weight of
/// one partition in the closed form of C^(k).
Rational partition_weight(const Partition& p);

namespace detail {

inline void check_order(unsigned n) {
  if (n > order_cap()) {
    throw Error("combinatorics.order_too_large",
                "order " + std::to_string(n) + " exceeds the cap " + std::to_string(order_cap()));
  }
}

template <Scalar S>
S binomial_as(unsigned n, unsigned k) {
  return from_integer<S>(binomial(n, k));
}

}  // namespace detail

/// C^(0..k) by the coefficient recursion
///   q_1^(k) = m_k,  q_r^(k) = (1/r) sum_{j=1}^{k+1-r} binom(k,j) m_j q_{r-1}^(k-j).
template <Scalar S>
std::vector<TimePolynomial<S>> c_poly_table(unsigned k, const MomentVector<S>& mv) {
  mv.require(k);
  std::vector<TimePolynomial<S>> table;
  table.reserve(k + 1);
  table.push_back(TimePolynomial<S>::constant(S(1)));
  for (unsigned kk = 1; kk <= k; ++kk) {
    std::vector<S> q(kk + 1, S(0));
    q[1] = mv(kk);
    for (unsigned r = 2; r <= kk; ++r) {
      S acc(0);
      for (unsigned j = 1; j + r <= kk + 1; ++j) {
        acc += detail::binomial_as<S>(kk, j) * mv(j) * table[kk - j].coefficient(r - 1);
      }
      q[r] = acc / S(static_cast<long long>(r));
    }
    table.emplace_back(std::move(q));
  }
  return table;
}

template <Scalar S>
TimePolynomial<S> c_poly_recursive(unsigned k, const MomentVector<S>& mv) {
  return c_poly_table(k, mv).back();
}

/// C^(k) as a sum over the partitions of k.
template <Scalar S>
TimePolynomial<S> c_poly_closed(unsigned k, const MomentVector<S>& mv) {
  if (k == 0) return TimePolynomial<S>::constant(S(1));
  mv.require(k);
  TimePolynomial<S> out;
  for (const auto& p : partitions(k)) {
    S c = from_rational<S>(partition_weight(p));
    for (unsigned part : p.parts) c *= mv(part);
    out += TimePolynomial<S>::monomial(c, p.length());
  }
  return out;
}

namespace detail {

template <Scalar S>
TimePolynomial<S> pi_from_table(const IndexTuple& theta, unsigned k,
                                const std::vector<TimePolynomial<S>>& table) {
  if (theta.sum() > k) {
    throw Error("chaos.tuple_exceeds_order",
                "tuple " + theta.to_string() + " has sum above the order " + std::to_string(k));
  }
  std::vector<unsigned> parts = theta.parts();
  const unsigned rest = k - theta.sum();
  parts.push_back(rest);
  return table[rest] * from_integer<S>(multinomial(parts));
}

}  // namespace detail

/// Pi_theta^(k) = multinomial(theta..., n) C^(n), n = k - sum(theta).
template <Scalar S>
TimePolynomial<S> pi_coeff(const IndexTuple& theta, unsigned k, const MomentVector<S>& mv) {
  if (theta.sum() > k) return detail::pi_from_table<S>(theta, k, {});
  return detail::pi_from_table(theta, k, c_poly_table(k - theta.sum(), mv));
}

/// Y-basis expansion of the n-th power of an increment. Unless `raw` is
/// already sigma-adjusted, m_2 -> m_2 + sigma^2 is applied here.
template <Scalar S>
Expansion<S> expand(unsigned n, const MomentVector<S>& raw) {
  detail::check_order(n);
  Expansion<S> e;
  e.order = n;
  e.basis = Basis::Y;
  e.moments = raw.adjusted ? raw : sigma_adjust(raw);
  if (n == 0) {
    e.constant = TimePolynomial<S>::constant(S(1));
    return e;
  }
  const auto table = c_poly_table(n, e.moments);
  for (const auto& theta : index_set(n)) e.terms.emplace(theta, detail::pi_from_table(theta, n, table));
  e.constant = table[n];
  return e;
}

template <Scalar S>
Expansion<S> expand(unsigned n, const LevyModel& model) {
  return expand(n, moments_as<S>(model, std::max(n, 2u)));
}

/// E[(X_{t+t0} - X_{t0})^n] as a polynomial in t.
template <Scalar S>
TimePolynomial<S> expectation(unsigned n, const LevyModel& model) {
  return expand<S>(n, model).constant;
}

/// Moment vector of length n with every entry and sigma^2 zero, marked as
/// already adjusted.
template <Scalar S>
MomentVector<S> zero_moments(unsigned n) {
  MomentVector<S> mv;
  mv.m.assign(n, S(0));
  mv.adjusted = true;
  return mv;
}

/// X_t^n against raw power jump sums: coefficient n!/(i_1! ... i_p!) on every
/// composition of n, no constant.
template <Scalar S>
Expansion<S> jamshidian_expand(unsigned n) {
  detail::check_order(n);
  Expansion<S> e;
  e.order = n;
  e.basis = Basis::Noncompensated;
  e.moments = zero_moments<S>(n);
  for (unsigned p = 1; p <= n; ++p) {
    for (const auto& theta : exact_sum_compositions(n, p)) {
      e.terms.emplace(theta, TimePolynomial<S>::constant(from_integer<S>(multinomial(theta.parts()))));
    }
  }
  return e;
}

/// One integrand of the Poisson-random-measure form: the coefficient
/// multiplies x_1^{e_1} ... x_j^{e_j}, where x_1 is the earliest jump size.
template <Scalar S>
struct PrmIntegrandDescriptor {
  IndexTuple theta;
  std::vector<unsigned> exponents;
  TimePolynomial<S> coefficient;
  bool first_exponent_earliest = true;

  friend bool operator==(const PrmIntegrandDescriptor&, const PrmIntegrandDescriptor&) = default;
};

template <Scalar S>
std::vector<PrmIntegrandDescriptor<S>> prm_integrands(const Expansion<S>& y_expansion) {
  if (y_expansion.basis != Basis::Y) {
    throw Error("chaos.basis_mismatch", "integrand descriptors are read off a Y-basis expansion");
  }
  std::vector<PrmIntegrandDescriptor<S>> out;
  out.reserve(y_expansion.terms.size());
  for (const auto& [theta, poly] : y_expansion.terms) out.push_back({theta, theta.parts(), poly, true});
  return out;
}

template <Scalar S>
std::vector<PrmIntegrandDescriptor<S>> prm_integrands(unsigned n, const LevyModel& model) {
  return prm_integrands(expand<S>(n, model));
}

}  // namespace levy_chaos

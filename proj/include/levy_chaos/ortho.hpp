#pragma once

#include "levy_chaos/chaos.hpp"
#include "levy_chaos/error.hpp"
#include "levy_chaos/models.hpp"
#include "levy_chaos/triangular.hpp"

#include <cmath>
#include <concepts>
#include <functional>
#include <string>
#include <vector>

namespace levy_chaos {

/// Moments mu_r = sigma^2 [r = 0] + m_{r+2} of d eta = sigma^2 d delta_0 + x^2 nu(dx).
template <Scalar S>
struct EtaMoments {
  std::vector<S> mu;

  /// Largest N whose Hankel block mu_0..mu_{2N-2} is available.
  unsigned max_order() const noexcept { return static_cast<unsigned>((mu.size() + 1) / 2); }

  friend bool operator==(const EtaMoments&, const EtaMoments&) = default;
};

/// eta moments for orthogonalization order N (needs m_2..m_{2N}). An adjusted
/// vector already carries sigma^2 inside m_2.
template <Scalar S>
EtaMoments<S> eta_moments(const MomentVector<S>& mv, unsigned order) {
  if (order == 0) throw Error("ortho.invalid_order", "orthogonalization order must be positive");
  mv.require(2 * order);
  EtaMoments<S> eta;
  eta.mu.reserve(2 * order - 1);
  for (unsigned r = 0; r + 2 <= 2 * order; ++r) eta.mu.push_back(mv(r + 2));
  if (!mv.adjusted) eta.mu[0] += mv.sigma2;
  return eta;
}

/// <p, q> under eta for coefficient vectors in powers of x.
template <Scalar S>
S eta_inner(const std::vector<S>& p, const std::vector<S>& q, const EtaMoments<S>& eta) {
  if (p.size() + q.size() > eta.mu.size() + 1) {
    throw Error("ortho.insufficient_moments", "inner product needs more eta moments than supplied");
  }
  S acc(0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (is_zero(p[i])) continue;
    for (std::size_t j = 0; j < q.size(); ++j) acc += p[i] * q[j] * eta.mu[i + j];
  }
  return acc;
}

/// Row n of a as the coefficient vector of p_n (degree n-1).
template <Scalar S>
std::vector<S> ortho_polynomial(const LowerTriangular<S>& a, unsigned n) {
  std::vector<S> p(n);
  for (unsigned j = 1; j <= n; ++j) p[j - 1] = a(n, j);
  return p;
}

namespace detail {

/// Condition number of the Hankel block after symmetric diagonal scaling.
double equilibrated_condition(const std::vector<double>& mu, unsigned order);

template <Scalar S>
bool nonpositive(const S& v) {
  if constexpr (std::same_as<S, double>) {
    return !(v > 0.0);
  } else {
    return v <= 0;
  }
}

}  // namespace detail

/// Monic orthogonal polynomials p_1..p_N (p_n of degree n-1) by Gram-Schmidt
/// on the Hankel inner product. Doubles get a second orthogonalization pass
/// and a conditioning check; rationals are exact.
template <Scalar S>
LowerTriangular<S> gram_schmidt(const EtaMoments<S>& eta, unsigned order) {
  if (order == 0) throw Error("ortho.invalid_order", "orthogonalization order must be positive");
  const unsigned cap = std::same_as<S, double> ? float_ortho_cap() : order_cap();
  if (order > cap) {
    throw Error("ortho.order_too_large",
                "orthogonalization order " + std::to_string(order) + " exceeds the cap " + std::to_string(cap));
  }
  if (order > eta.max_order()) {
    throw Error("ortho.insufficient_moments",
                "order " + std::to_string(order) + " needs eta moments up to mu_" + std::to_string(2 * order - 2));
  }
  auto degenerate = [](unsigned n, const std::string& why) {
    return Error("ortho.degenerate_measure",
                 "degenerate measure: reduce order (polynomial " + std::to_string(n) + ": " + why + ")");
  };
  if constexpr (std::same_as<S, double>) {
    for (unsigned i = 0; i < order; ++i) {
      if (!(eta.mu[2 * i] > 0.0)) throw degenerate(i + 1, "nonpositive diagonal moment");
    }
    const double cond = detail::equilibrated_condition(eta.mu, order);
    if (!(cond <= 1e12)) throw degenerate(order, "Hankel condition number " + format_scalar(cond));
  }

  LowerTriangular<S> a(order);
  std::vector<std::vector<S>> basis;
  std::vector<S> norms;
  for (unsigned n = 1; n <= order; ++n) {
    std::vector<S> p(n, S(0));
    p[n - 1] = S(1);
    const int passes = std::same_as<S, double> ? 2 : 1;
    for (int pass = 0; pass < passes; ++pass) {
      for (unsigned k = 0; k + 1 < n; ++k) {
        const S c = eta_inner(p, basis[k], eta) / norms[k];
        for (unsigned j = 0; j <= k; ++j) p[j] -= c * basis[k][j];
      }
    }
    S norm = eta_inner(p, p, eta);
    if (detail::nonpositive(norm)) throw degenerate(n, "nonpositive norm");
    for (unsigned j = 1; j < n; ++j) a(n, j) = p[j - 1];
    basis.push_back(std::move(p));
    norms.push_back(std::move(norm));
  }
  return a;
}

/// b = a^{-1}: b_{n,n} = 1, b_{n,k} = -sum_{l=k}^{n-1} a_{n,l} b_{l,k}.
template <Scalar S>
LowerTriangular<S> invert_to_b(const LowerTriangular<S>& a) {
  if (!a.is_unit()) throw Error("ortho.not_unit", "orthogonalization matrix must have unit diagonal");
  const unsigned order = a.order();
  LowerTriangular<S> b(order);
  for (unsigned n = 2; n <= order; ++n) {
    for (unsigned k = 1; k < n; ++k) {
      S acc(0);
      for (unsigned l = k; l < n; ++l) acc += a(n, l) * b(l, k);
      b(n, k) = -acc;
    }
  }
  return b;
}

template <Scalar S>
struct OrthoTriangular {
  EtaMoments<S> eta;
  LowerTriangular<S> a;
  LowerTriangular<S> b;

  unsigned order() const noexcept { return a.order(); }
};

template <Scalar S>
OrthoTriangular<S> orthogonalize(const MomentVector<S>& mv, unsigned order) {
  OrthoTriangular<S> o;
  o.eta = eta_moments(mv, order);
  o.a = gram_schmidt(o.eta, order);
  o.b = invert_to_b(o.a);
  return o;
}

template <Scalar S>
OrthoTriangular<S> orthogonalize(const LevyModel& model, unsigned order) {
  return orthogonalize(moments_as<S>(model, std::max(2 * order, 2u)), order);
}

namespace detail {

/// Substitutes every integrator index theta_p by sum_k coef(theta_p, k) of
/// index k for k <= theta_p, collecting the products of coefficients.
template <Scalar S>
std::map<IndexTuple, TimePolynomial<S>> substitute(const std::map<IndexTuple, TimePolynomial<S>>& terms,
                                                   const LowerTriangular<S>& coef) {
  std::map<IndexTuple, TimePolynomial<S>> out;
  std::vector<unsigned> kappa;
  for (const auto& [theta, poly] : terms) {
    if (theta.max_part() > coef.order()) {
      throw Error("ortho.order_mismatch", "tuple " + theta.to_string() + " needs orthogonalization order " +
                                              std::to_string(theta.max_part()) + " but only " +
                                              std::to_string(coef.order()) + " is available");
    }
    kappa.assign(theta.size(), 0);
    std::function<void(std::size_t, const S&)> walk = [&](std::size_t p, const S& weight) {
      if (p == theta.size()) {
        auto [it, fresh] = out.try_emplace(IndexTuple(kappa), poly * weight);
        if (!fresh) it->second += poly * weight;
        return;
      }
      for (unsigned k = 1; k <= theta[p]; ++k) {
        const S& c = coef(theta[p], k);
        if (is_zero(c)) continue;
        kappa[p] = k;
        walk(p + 1, S(weight * c));
      }
    };
    walk(0, S(1));
  }
  return out;
}

}  // namespace detail

/// Rewrites a Y-basis expansion against H via Y^(n) = sum_k b_{n,k} H^(k).
template <Scalar S>
Expansion<S> to_h_basis(const Expansion<S>& y, const OrthoTriangular<S>& ortho) {
  if (y.basis != Basis::Y) throw Error("ortho.basis_mismatch", "to_h_basis expects a Y-basis expansion");
  Expansion<S> h = y;
  h.basis = Basis::H;
  h.terms = detail::substitute(y.terms, ortho.b);
  h.orthogonalizer = ortho.a;
  return h;
}

/// Inverse of to_h_basis via H^(i) = sum_j a_{i,j} Y^(j).
template <Scalar S>
Expansion<S> to_y_basis(const Expansion<S>& h) {
  if (h.basis != Basis::H || !h.orthogonalizer) {
    throw Error("ortho.basis_mismatch", "to_y_basis expects an H-basis expansion carrying its a-matrix");
  }
  Expansion<S> y = h;
  y.basis = Basis::Y;
  y.terms = detail::substitute(h.terms, *h.orthogonalizer);
  y.orthogonalizer.reset();
  return y;
}

}  // namespace levy_chaos

#pragma once

#include "levy_chaos/chaos.hpp"
#include "levy_chaos/evaluate.hpp"
#include "levy_chaos/paths.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace levy_chaos {

/// Smooth functional F = g(X_{t_1}, X_{t_2} - X_{t_1}, ..., X_{t_n} - X_{t_{n-1}})
/// given through its scaled derivatives at the origin.
template <Scalar S>
struct FunctionalSpec {
  std::string kind;
  std::vector<S> grid;  // t_1 < ... < t_n, the right ends of the increments
  unsigned order = 0;   // truncation order D
  /// (1/l!) d^l g / dx_{j_1} ... dx_{j_l} at 0 for the sorted 1-based
  /// indices j_1 <= ... <= j_l.
  std::function<S(const std::vector<unsigned>&)> derivative;
  /// g itself, for measuring truncation error.
  std::function<double(const std::vector<double>&)> value;
  /// Records that the caller asserts summable Taylor coefficients; not checked.
  bool growth_bound_asserted = false;

  unsigned arity() const noexcept { return static_cast<unsigned>(grid.size()); }
};

template <Scalar S>
struct TaylorTerm {
  std::vector<unsigned> exponents;  // one per increment
  S coefficient;
};

namespace detail {

inline void exponent_vectors(unsigned arity, unsigned total, std::vector<unsigned>& cur,
                             std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == arity) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned e = total + 1; e-- > 0;) {
    cur.push_back(e);
    exponent_vectors(arity, total - e, cur, out);
    cur.pop_back();
  }
}

template <Scalar S>
void check_grid(const std::vector<S>& grid) {
  if (grid.empty()) throw Error("taylor.invalid_grid", "functional needs at least one increment");
  S prev(0);
  for (const auto& t : grid) {
    if (!(t > prev)) {
      throw Error("taylor.overlapping_intervals", "increment grid must be strictly increasing and positive");
    }
    prev = t;
  }
}

}  // namespace detail

/// Monomials prod_k x_k^{e_k} with sum e_k <= D and their coefficients
/// multinomial(e) * g^{(l)}; ordered by total degree, then by decreasing
/// exponent of the first increment. Zero coefficients are dropped.
template <Scalar S>
std::vector<TaylorTerm<S>> taylor_terms(const FunctionalSpec<S>& spec) {
  detail::check_order(spec.order);
  detail::check_grid(spec.grid);
  std::vector<TaylorTerm<S>> out;
  for (unsigned total = 0; total <= spec.order; ++total) {
    std::vector<std::vector<unsigned>> vecs;
    std::vector<unsigned> cur;
    detail::exponent_vectors(spec.arity(), total, cur, vecs);
    for (auto& e : vecs) {
      std::vector<unsigned> indices;
      for (unsigned k = 0; k < e.size(); ++k) indices.insert(indices.end(), e[k], k + 1);
      S c = from_integer<S>(multinomial(e)) * spec.derivative(indices);
      if (!is_zero(c)) out.push_back({std::move(e), std::move(c)});
    }
  }
  return out;
}

/// g(x) = exp(scale * (x_1 + ... + x_n)).
template <Scalar S>
FunctionalSpec<S> exp_functional(std::vector<S> grid, unsigned order, S scale = S(1)) {
  FunctionalSpec<S> f;
  f.kind = "exp";
  f.grid = std::move(grid);
  f.order = order;
  f.derivative = [scale](const std::vector<unsigned>& idx) {
    S c(1);
    for (std::size_t r = 1; r <= idx.size(); ++r) c = c * scale / S(static_cast<long long>(r));
    return c;
  };
  const double s = to_double(scale);
  f.value = [s](const std::vector<double>& x) {
    double sum = 0.0;
    for (double v : x) sum += v;
    return std::exp(s * sum);
  };
  f.growth_bound_asserted = true;
  return f;
}

/// Polynomial g given by its monomials.
template <Scalar S>
FunctionalSpec<S> poly_functional(std::vector<S> grid, unsigned order, std::vector<TaylorTerm<S>> monomials) {
  for (const auto& m : monomials) {
    if (m.exponents.size() != grid.size()) {
      throw Error("taylor.invalid_monomial", "monomial exponent count differs from the number of increments");
    }
  }
  FunctionalSpec<S> f;
  f.kind = "poly";
  f.grid = std::move(grid);
  f.order = order;
  f.derivative = [monomials, arity = f.grid.size()](const std::vector<unsigned>& idx) {
    std::vector<unsigned> e(arity, 0);
    for (unsigned j : idx) ++e[j - 1];
    S c(0);
    for (const auto& m : monomials) {
      if (m.exponents == e) c += m.coefficient;
    }
    return S(c / from_integer<S>(multinomial(e)));
  };
  f.value = [monomials](const std::vector<double>& x) {
    double acc = 0.0;
    for (const auto& m : monomials) {
      double term = to_double(m.coefficient);
      for (std::size_t k = 0; k < x.size(); ++k) term *= std::pow(x[k], static_cast<int>(m.exponents[k]));
      acc += term;
    }
    return acc;
  };
  f.growth_bound_asserted = true;
  return f;
}

/// Forward contract F_t = S_t e^{r (T - t)} with S_t = s0 e^{X_t}: one
/// increment over (0, t].
FunctionalSpec<double> forward_functional(double s0, double rate, double maturity, double t, unsigned order);

/// Pathwise value of the truncated functional.
template <Scalar S>
struct FunctionalValue {
  S approx{0};            // sum of coefficients times products of chaos reconstructions
  S truncated_direct{0};  // the same Taylor polynomial evaluated on the increments
  double function_value = 0.0;
  std::vector<S> increments;
};

namespace detail {

/// table[k][e] = reconstructed e-th power of increment k (table[k][0] = 1).
template <Scalar S>
FunctionalValue<S> assemble(const std::vector<TaylorTerm<S>>& terms, const std::vector<std::vector<S>>& table,
                            const std::vector<S>& increments, unsigned order,
                            const std::function<double(const std::vector<double>&)>& value) {
  FunctionalValue<S> v;
  v.increments = increments;
  for (const auto& term : terms) {
    unsigned total = 0;
    for (unsigned e : term.exponents) total += e;
    if (total > order) continue;
    S chaos = term.coefficient;
    S direct = term.coefficient;
    for (std::size_t k = 0; k < term.exponents.size(); ++k) {
      chaos *= table[k][term.exponents[k]];
      direct *= int_power(increments[k], term.exponents[k]);
    }
    v.approx += chaos;
    v.truncated_direct += direct;
  }
  if (value) {
    std::vector<double> x;
    for (const auto& inc : increments) x.push_back(to_double(inc));
    v.function_value = value(x);
  }
  return v;
}

}  // namespace detail

/// Reconstructions of powers 0..D of every increment of a jump path.
template <Scalar S>
std::vector<std::vector<S>> interval_power_table(const JumpPath<S>& path, const std::vector<S>& grid, unsigned order,
                                                 std::vector<S>* increments = nullptr) {
  detail::check_grid(grid);
  std::vector<std::vector<S>> table;
  S left(0);
  for (const auto& right : grid) {
    std::vector<S> row{S(1)};
    for (unsigned e = 1; e <= order; ++e) {
      row.push_back(reconstruct_exact(expand(e, path.moments), path, left, right).terminal_reconstructed());
    }
    table.push_back(std::move(row));
    if (increments) increments->push_back(path.value(right) - path.value(left));
    left = right;
  }
  return table;
}

/// Exact substrate: compensators are the path's declared moments.
template <Scalar S>
FunctionalValue<S> eval_functional(const FunctionalSpec<S>& spec, const JumpPath<S>& path) {
  std::vector<S> increments;
  const auto table = interval_power_table(path, spec.grid, spec.order, &increments);
  return detail::assemble(taylor_terms(spec), table, increments, spec.order, spec.value);
}

/// Grid substrate: every increment is reconstructed by the left-endpoint scheme.
FunctionalValue<double> eval_functional(const FunctionalSpec<double>& spec, const GridPath& path,
                                        const LevyModel& model);

enum class Substrate { Grid, Exact };

/// Error statistics of the truncated functional at one order D over a batch.
struct TruncationRow {
  unsigned order = 0;
  std::size_t paths = 0;
  double mean_abs_error = 0.0;       // |approx - g|
  double max_abs_error = 0.0;
  double max_abs_chaos_error = 0.0;  // |approx - truncated Taylor polynomial|
};

/// Simulates `batch` paths of the model with step dt and evaluates the
/// functional at each order. With Substrate::Exact the sampled increments
/// are read as jumps (see as_jump_path) and integrated exactly.
std::vector<TruncationRow> truncation_study(const FunctionalSpec<double>& spec, const std::vector<unsigned>& orders,
                                            const LevyModel& model, std::size_t batch, double dt, std::uint64_t seed,
                                            Substrate substrate);

}  // namespace levy_chaos

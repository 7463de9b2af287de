#pragma once

#include "levy_chaos/chaos.hpp"
#include "levy_chaos/error.hpp"
#include "levy_chaos/paths.hpp"
#include "levy_chaos/time_polynomial.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace levy_chaos {

/// Integrator sum_i w_i X^(i) - c t, where X^(1) = X and X^(i) sums the
/// i-th powers of the jumps. weights[i-1] holds w_i.
template <Scalar S>
struct Integrator {
  std::vector<S> weights;
  S compensator{0};
};

/// Y^(i) = X^(i) - m_i t for the given compensators.
template <Scalar S>
Integrator<S> power_integrator(unsigned i, const MomentVector<S>& mv) {
  Integrator<S> z;
  z.weights.assign(i, S(0));
  z.weights[i - 1] = S(1);
  z.compensator = mv(i);
  return z;
}

/// Integrators for indices 1..order as the expansion's basis reads them.
template <Scalar S>
std::vector<Integrator<S>> integrators_for(const Expansion<S>& e) {
  std::vector<Integrator<S>> out;
  for (unsigned k = 1; k <= e.order; ++k) {
    if (e.basis != Basis::H) {
      out.push_back(power_integrator(k, e.moments));
      continue;
    }
    const auto& a = *e.orthogonalizer;
    if (a.order() < k) throw Error("evaluate.order_mismatch", "orthogonalizer order below the expansion order");
    Integrator<S> z;
    z.weights.assign(k, S(0));
    for (unsigned j = 1; j <= k; ++j) {
      z.weights[j - 1] = a(k, j);
      z.compensator += a(k, j) * e.moments(j);
    }
    out.push_back(std::move(z));
  }
  return out;
}

namespace detail {

template <Scalar S>
S int_power(const S& x, unsigned i) {
  S p(1);
  for (unsigned r = 0; r < i; ++r) p *= x;
  return p;
}

/// Visits every tuple of index_set(n) depth-first. Each tuple's process is
/// step(parent process, last index), so shared prefixes are evaluated once.
template <class Process, class Step, class Visit>
void walk_tuples(unsigned n, const Process& root, Step&& step, Visit&& visit) {
  std::vector<unsigned> prefix;
  std::function<void(const Process&, unsigned)> go = [&](const Process& parent, unsigned remaining) {
    for (unsigned i = 1; i <= remaining; ++i) {
      prefix.push_back(i);
      Process child = step(parent, i);
      visit(IndexTuple(prefix), child);
      go(child, remaining - i);
      prefix.pop_back();
    }
  };
  go(root, n);
}

}  // namespace detail

/// Segments of [t0, t] cut at the jumps in (t0, t]. Segment j starts at
/// points[j] (just after the jump there, for j >= 1) and has length lengths[j].
template <Scalar S>
struct Timeline {
  std::vector<S> points;
  std::vector<S> lengths;
  std::vector<S> jump_sizes;  // jump_sizes[j] at points[j]; unused for j = 0
  S drift{0};
  S t0{0};

  std::size_t segments() const noexcept { return points.size(); }
};

template <Scalar S>
Timeline<S> make_timeline(const JumpPath<S>& path, const S& t0, const S& t) {
  if (!(t0 < t)) throw Error("evaluate.invalid_interval", "t0 must be strictly before t");
  if (t0 < 0 || t > path.horizon) throw Error("evaluate.invalid_interval", "interval leaves [0, horizon]");
  Timeline<S> tl;
  tl.drift = path.drift;
  tl.t0 = t0;
  tl.points.push_back(t0);
  tl.jump_sizes.push_back(S(0));
  for (const auto& j : path.jumps) {
    if (j.time > t0 && j.time <= t) {
      tl.points.push_back(j.time);
      tl.jump_sizes.push_back(j.size);
    }
  }
  for (std::size_t j = 0; j < tl.points.size(); ++j) {
    const S& end = j + 1 < tl.points.size() ? tl.points[j + 1] : t;
    tl.lengths.push_back(end - tl.points[j]);
  }
  return tl;
}

/// Process that is polynomial in local time on every segment of a timeline.
template <Scalar S>
struct PiecewisePolyProcess {
  std::vector<TimePolynomial<S>> pieces;

  S at_start(std::size_t j) const { return pieces[j](S(0)); }
  S left_limit_at_end(std::size_t j, const Timeline<S>& tl) const { return pieces[j](tl.lengths[j]); }
  S terminal(const Timeline<S>& tl) const { return left_limit_at_end(pieces.size() - 1, tl); }
};

/// outer(t) = int_{t0}^{t} inner(s-) dZ_s, exactly.
template <Scalar S>
PiecewisePolyProcess<S> integrate_exact(const PiecewisePolyProcess<S>& inner, const Integrator<S>& z,
                                        const Timeline<S>& tl) {
  const S rate = z.weights[0] * tl.drift - z.compensator;
  PiecewisePolyProcess<S> outer;
  outer.pieces.reserve(tl.segments());
  S value(0);
  for (std::size_t j = 0; j < tl.segments(); ++j) {
    if (j > 0) {
      S dz(0);
      for (std::size_t i = 0; i < z.weights.size(); ++i) {
        if (!is_zero(z.weights[i])) dz += z.weights[i] * detail::int_power(tl.jump_sizes[j], i + 1);
      }
      value = outer.left_limit_at_end(j - 1, tl) + inner.left_limit_at_end(j - 1, tl) * dz;
    }
    outer.pieces.push_back(TimePolynomial<S>::constant(value) + inner.pieces[j].integral() * rate);
  }
  return outer;
}

template <Scalar S>
PiecewisePolyProcess<S> unit_process(const Timeline<S>& tl) {
  return PiecewisePolyProcess<S>{std::vector<TimePolynomial<S>>(tl.segments(), TimePolynomial<S>::constant(S(1)))};
}

/// S_theta(t) over (t0, t] with the given integrators; theta[0] innermost.
template <Scalar S>
S eval_exact(const JumpPath<S>& path, const IndexTuple& theta, const S& t0, const S& t,
             const std::vector<Integrator<S>>& integrators) {
  const auto tl = make_timeline(path, t0, t);
  auto process = unit_process(tl);
  for (unsigned i : theta.parts()) {
    if (i == 0 || i > integrators.size()) throw Error("evaluate.order_mismatch", "no integrator for index " + std::to_string(i));
    process = integrate_exact(process, integrators[i - 1], tl);
  }
  return process.terminal(tl);
}

/// Y-integral using the path's own compensators (sigma-adjusted if needed).
template <Scalar S>
S eval_exact(const JumpPath<S>& path, const IndexTuple& theta, const S& t0, const S& t) {
  const auto mv = path.moments.adjusted ? path.moments : sigma_adjust(path.moments);
  std::vector<Integrator<S>> zs;
  for (unsigned i = 1; i <= theta.max_part(); ++i) zs.push_back(power_integrator(i, mv));
  return eval_exact(path, theta, t0, t, zs);
}

/// Values of a reconstruction at the start and end of every segment.
template <Scalar S>
struct ExactSeries {
  std::vector<S> times;
  std::vector<S> direct;
  std::vector<S> reconstructed;
  std::map<IndexTuple, S> term_norms;  // max |Pi_theta S_theta| over the checkpoints

  const S& terminal_direct() const { return direct.back(); }
  const S& terminal_reconstructed() const { return reconstructed.back(); }
};

/// Evaluates sum_theta Pi_theta(t - t0) S_theta(t) + C(t - t0) on a jump path
/// and the direct power (X_t - X_{t0})^n at the same checkpoints.
template <Scalar S>
ExactSeries<S> reconstruct_exact(const Expansion<S>& e, const JumpPath<S>& path, const S& t0, const S& t) {
  const auto tl = make_timeline(path, t0, t);
  const auto zs = integrators_for(e);
  ExactSeries<S> out;

  // Checkpoint c = 2j + end for segment j.
  std::vector<S> elapsed;
  S jumps_so_far(0);
  for (std::size_t j = 0; j < tl.segments(); ++j) {
    jumps_so_far += tl.jump_sizes[j];
    for (int end = 0; end < 2; ++end) {
      const S tau = end ? S(tl.points[j] + tl.lengths[j]) : tl.points[j];
      out.times.push_back(tau);
      elapsed.push_back(tau - t0);
      out.direct.push_back(detail::int_power(S(tl.drift * (tau - t0) + jumps_so_far), e.order));
    }
  }
  for (const auto& tau : elapsed) out.reconstructed.push_back(e.constant(tau));

  auto sample = [&](const PiecewisePolyProcess<S>& p, std::size_t c) {
    const std::size_t j = c / 2;
    return (c % 2) ? p.left_limit_at_end(j, tl) : p.at_start(j);
  };
  auto step = [&](const PiecewisePolyProcess<S>& parent, unsigned i) {
    return integrate_exact(parent, zs[i - 1], tl);
  };
  auto visit = [&](const IndexTuple& theta, const PiecewisePolyProcess<S>& process) {
    auto it = e.terms.find(theta);
    if (it == e.terms.end() || it->second.is_zero()) return;
    S norm(0);
    for (std::size_t c = 0; c < elapsed.size(); ++c) {
      const S contribution = it->second(elapsed[c]) * sample(process, c);
      out.reconstructed[c] += contribution;
      if (abs_value(contribution) > norm) norm = abs_value(contribution);
    }
    out.term_norms.emplace(theta, norm);
  };
  if (e.order > 0) detail::walk_tuples(e.order, unit_process(tl), step, visit);
  return out;
}

/// Terms of an expansion whose tuple sum exceeds the order are never
/// visited; reject them up front instead of silently dropping them.
template <Scalar S>
void check_terms(const Expansion<S>& e) {
  for (const auto& [theta, poly] : e.terms) {
    if (theta.sum() > e.order) {
      throw Error("evaluate.order_mismatch", "term " + theta.to_string() + " exceeds the expansion order");
    }
  }
  if (e.basis == Basis::H && !e.orthogonalizer) {
    throw Error("evaluate.basis_mismatch", "H-basis expansion lacks its orthogonalizer");
  }
}

/// Outcome of comparing a reconstruction with the direct power.
template <Scalar S>
struct VerificationReport {
  unsigned n = 0;
  Basis basis = Basis::Y;
  std::string substrate;   // "exact" or "grid"
  std::string provenance;  // model or path description
  S t0{0};
  S t{0};
  double dt = 0.0;
  std::uint64_t seed = 0;
  S direct_terminal{0};
  S reconstructed_terminal{0};
  S terminal_diff{0};
  S max_abs_diff{0};
  std::map<IndexTuple, S> term_norms;
};

template <Scalar S>
std::string describe_path(const JumpPath<S>& path) {
  return "jump_path:jumps=" + std::to_string(path.jumps.size()) + ",drift=" + format_scalar(path.drift) +
         ",horizon=" + format_scalar(path.horizon);
}

template <Scalar S>
VerificationReport<S> verify_exact(const Expansion<S>& e, const JumpPath<S>& path, const S& t0, const S& t) {
  check_terms(e);
  const auto series = reconstruct_exact(e, path, t0, t);
  VerificationReport<S> r;
  r.n = e.order;
  r.basis = e.basis;
  r.substrate = "exact";
  r.provenance = describe_path(path);
  r.t0 = t0;
  r.t = t;
  r.direct_terminal = series.terminal_direct();
  r.reconstructed_terminal = series.terminal_reconstructed();
  r.terminal_diff = r.reconstructed_terminal - r.direct_terminal;
  for (std::size_t c = 0; c < series.direct.size(); ++c) {
    const S d = abs_value(S(series.reconstructed[c] - series.direct[c]));
    if (d > r.max_abs_diff) r.max_abs_diff = d;
  }
  r.term_norms = series.term_norms;
  return r;
}

/// Y-basis check with the path's own compensators.
template <Scalar S>
VerificationReport<S> verify_exact(const JumpPath<S>& path, unsigned n, const S& t0, const S& t) {
  return verify_exact(expand(n, path.moments), path, t0, t);
}

// ---- grid substrate (doubles) ----

/// X-increment powers and integrator increments on one grid path.
struct GridSeries {
  std::vector<std::size_t> step;  // grid index of each point, from the t0 index on
  std::vector<double> time;
  std::vector<double> direct;
  std::vector<double> reconstructed;
  std::vector<double> diff;
  std::map<IndexTuple, double> term_norms;
};

/// S_theta at every grid point from t0 on by the left-endpoint scheme
/// I^r(t_k) = sum_{l <= k} I^{r-1}(t_{l-1}) dZ_l.
std::vector<double> eval_grid(const GridPath& path, const IndexTuple& theta, const MomentVector<double>& adjusted);

GridSeries reconstruct_grid(const Expansion<double>& e, const GridPath& path);

VerificationReport<double> verify_grid(const Expansion<double>& e, const GridPath& path, GridSeries* series = nullptr);

/// Simulates a path on [0, t0 + t] and verifies the Y-basis expansion of order n.
VerificationReport<double> verify_grid(const LevyModel& model, unsigned n, double t0, double t, double dt,
                                       std::uint64_t seed, GridSeries* series = nullptr);

/// Whether both series of a comparison jump at the same steps: every step
/// where one of them moves by more than `threshold` must see the other move
/// by more than threshold / 2.
struct JumpAgreement {
  std::size_t direct_jumps = 0;
  std::size_t reconstructed_jumps = 0;
  std::size_t mismatches = 0;
  bool agree() const noexcept { return mismatches == 0 && direct_jumps > 0; }
};
JumpAgreement jump_agreement(const GridSeries& series, double threshold);

struct ConvergenceRow {
  double dt = 0.0;
  std::size_t steps = 0;
  double max_abs_diff = 0.0;
  double terminal_diff = 0.0;
};

/// One fine path at the smallest dt, coarsened from t0 for the larger ones.
/// Every dt must be an integer multiple of the smallest.
std::vector<ConvergenceRow> convergence_sweep(const LevyModel& model, unsigned n, double t0, double t,
                                              std::vector<double> dts, std::uint64_t seed);

// ---- products ----

template <Scalar S>
struct ProductReport {
  unsigned m = 0;
  unsigned n = 0;
  S terminal_diff{0};
  S max_abs_diff{0};
};

/// reconstruct(m) * reconstruct(n) against reconstruct(m + n) on one path.
template <Scalar S>
ProductReport<S> product_check(const JumpPath<S>& path, unsigned m, unsigned n, const S& t0, const S& t) {
  const auto a = reconstruct_exact(expand(m, path.moments), path, t0, t);
  const auto b = reconstruct_exact(expand(n, path.moments), path, t0, t);
  const auto c = reconstruct_exact(expand(m + n, path.moments), path, t0, t);
  ProductReport<S> r{m, n, S(0), S(0)};
  for (std::size_t k = 0; k < c.reconstructed.size(); ++k) {
    const S d = S(a.reconstructed[k] * b.reconstructed[k] - c.reconstructed[k]);
    if (abs_value(d) > r.max_abs_diff) r.max_abs_diff = abs_value(d);
    if (k + 1 == c.reconstructed.size()) r.terminal_diff = d;
  }
  return r;
}

ProductReport<double> product_check(const GridPath& path, const LevyModel& model, unsigned m, unsigned n);

}  // namespace levy_chaos

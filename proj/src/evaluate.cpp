#include "levy_chaos/evaluate.hpp"

#include <algorithm>
#include <cmath>

namespace levy_chaos {

namespace {

/// Increments dZ_l = sum_i w_i dX_l^i - c dt for the steps after t0.
std::vector<double> integrator_increments(const GridPath& path, const Integrator<double>& z) {
  const std::size_t k0 = path.t0_index();
  std::vector<double> dz(path.steps() - k0);
  const double drift = z.compensator * path.dt;
  for (std::size_t l = 0; l < dz.size(); ++l) {
    const double x = path.dX[k0 + l];
    double p = 1.0;
    double acc = 0.0;
    for (double w : z.weights) {
      p *= x;
      acc += w * p;
    }
    dz[l] = acc - drift;
  }
  return dz;
}

std::vector<double> integrate_grid(const std::vector<double>& inner, const std::vector<double>& dz) {
  std::vector<double> outer(inner.size(), 0.0);
  for (std::size_t l = 0; l < dz.size(); ++l) outer[l + 1] = outer[l] + inner[l] * dz[l];
  return outer;
}

}  // namespace

std::vector<double> eval_grid(const GridPath& path, const IndexTuple& theta, const MomentVector<double>& adjusted) {
  if (!adjusted.adjusted) {
    throw Error("paths.unadjusted_moments", "grid integrals need sigma-adjusted compensators");
  }
  const std::size_t k0 = path.t0_index();
  std::vector<double> process(path.steps() - k0 + 1, 1.0);
  for (unsigned i : theta.parts()) {
    process = integrate_grid(process, integrator_increments(path, power_integrator(i, adjusted)));
  }
  return process;
}

GridSeries reconstruct_grid(const Expansion<double>& e, const GridPath& path) {
  check_terms(e);
  const std::size_t k0 = path.t0_index();
  const std::size_t points = path.steps() - k0 + 1;

  GridSeries out;
  out.step.resize(points);
  out.time.resize(points);
  std::vector<double> elapsed(points);
  for (std::size_t k = 0; k < points; ++k) {
    out.step[k] = k0 + k;
    out.time[k] = path.time(k0 + k);
    elapsed[k] = static_cast<double>(k) * path.dt;
  }
  const auto x = increment_series(path);
  out.direct.resize(points);
  out.reconstructed.resize(points);
  for (std::size_t k = 0; k < points; ++k) {
    out.direct[k] = std::pow(x[k], static_cast<int>(e.order));
    out.reconstructed[k] = e.constant(elapsed[k]);
  }

  std::vector<std::vector<double>> dz;
  for (const auto& z : integrators_for(e)) dz.push_back(integrator_increments(path, z));

  auto step = [&](const std::vector<double>& parent, unsigned i) { return integrate_grid(parent, dz[i - 1]); };
  auto visit = [&](const IndexTuple& theta, const std::vector<double>& process) {
    auto it = e.terms.find(theta);
    if (it == e.terms.end() || it->second.is_zero()) return;
    double norm = 0.0;
    for (std::size_t k = 0; k < points; ++k) {
      const double contribution = it->second(elapsed[k]) * process[k];
      out.reconstructed[k] += contribution;
      norm = std::max(norm, std::abs(contribution));
    }
    out.term_norms.emplace(theta, norm);
  };
  if (e.order > 0) detail::walk_tuples(e.order, std::vector<double>(points, 1.0), step, visit);

  out.diff.resize(points);
  for (std::size_t k = 0; k < points; ++k) out.diff[k] = out.reconstructed[k] - out.direct[k];
  return out;
}

VerificationReport<double> verify_grid(const Expansion<double>& e, const GridPath& path, GridSeries* series) {
  GridSeries s = reconstruct_grid(e, path);
  VerificationReport<double> r;
  r.n = e.order;
  r.basis = e.basis;
  r.substrate = "grid";
  r.provenance = path.model;
  r.t0 = path.t0;
  r.t = static_cast<double>(s.time.size() - 1) * path.dt;
  r.dt = path.dt;
  r.seed = path.seed;
  r.direct_terminal = s.direct.back();
  r.reconstructed_terminal = s.reconstructed.back();
  r.terminal_diff = s.diff.back();
  for (double d : s.diff) r.max_abs_diff = std::max(r.max_abs_diff, std::abs(d));
  r.term_norms = s.term_norms;
  if (series) *series = std::move(s);
  return r;
}

VerificationReport<double> verify_grid(const LevyModel& model, unsigned n, double t0, double t, double dt,
                                       std::uint64_t seed, GridSeries* series) {
  const auto path = simulate_grid(model, t0 + t, dt, t0, seed);
  return verify_grid(expand<double>(n, model), path, series);
}

JumpAgreement jump_agreement(const GridSeries& series, double threshold) {
  JumpAgreement a;
  for (std::size_t k = 1; k < series.direct.size(); ++k) {
    const double dd = std::abs(series.direct[k] - series.direct[k - 1]);
    const double dr = std::abs(series.reconstructed[k] - series.reconstructed[k - 1]);
    if (dd > threshold) ++a.direct_jumps;
    if (dr > threshold) ++a.reconstructed_jumps;
    if ((dd > threshold && !(dr > threshold / 2)) || (dr > threshold && !(dd > threshold / 2))) ++a.mismatches;
  }
  return a;
}

std::vector<ConvergenceRow> convergence_sweep(const LevyModel& model, unsigned n, double t0, double t,
                                              std::vector<double> dts, std::uint64_t seed) {
  if (dts.empty()) throw Error("evaluate.invalid_sweep", "no step sizes given");
  const double finest = *std::min_element(dts.begin(), dts.end());
  const auto fine = simulate_grid(model, t0 + t, finest, t0, seed);
  const auto e = expand<double>(n, model);
  std::vector<ConvergenceRow> rows;
  for (double dt : dts) {
    const double ratio = dt / finest;
    const double r = std::round(ratio);
    if (r < 1 || std::abs(ratio - r) > 1e-6) {
      throw Error("evaluate.invalid_sweep",
                  "step " + format_scalar(dt) + " is not a multiple of the finest step " + format_scalar(finest));
    }
    const auto path = r == 1 ? fine : coarsen(fine, static_cast<std::size_t>(r));
    const auto report = verify_grid(e, path);
    rows.push_back({dt, path.steps() - path.t0_index(), report.max_abs_diff, report.terminal_diff});
  }
  return rows;
}

ProductReport<double> product_check(const GridPath& path, const LevyModel& model, unsigned m, unsigned n) {
  const auto a = reconstruct_grid(expand<double>(m, model), path);
  const auto b = reconstruct_grid(expand<double>(n, model), path);
  const auto c = reconstruct_grid(expand<double>(m + n, model), path);
  ProductReport<double> r{m, n, 0.0, 0.0};
  for (std::size_t k = 0; k < c.reconstructed.size(); ++k) {
    const double d = a.reconstructed[k] * b.reconstructed[k] - c.reconstructed[k];
    r.max_abs_diff = std::max(r.max_abs_diff, std::abs(d));
    r.terminal_diff = d;
  }
  return r;
}

}  // namespace levy_chaos

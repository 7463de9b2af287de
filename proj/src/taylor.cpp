#include "levy_chaos/taylor.hpp"

#include <algorithm>
#include <cmath>

namespace levy_chaos {

FunctionalSpec<double> forward_functional(double s0, double rate, double maturity, double t, unsigned order) {
  if (!(s0 > 0.0)) throw Error("taylor.invalid_parameter", "spot s0 must be positive");
  if (t > maturity) throw Error("taylor.invalid_parameter", "evaluation time lies after maturity");
  const double scale = s0 * std::exp(rate * (maturity - t));
  FunctionalSpec<double> f = exp_functional<double>({t}, order, 1.0);
  f.kind = "forward";
  f.derivative = [scale](const std::vector<unsigned>& idx) {
    double c = scale;
    for (std::size_t r = 1; r <= idx.size(); ++r) c /= static_cast<double>(r);
    return c;
  };
  f.value = [scale](const std::vector<double>& x) { return scale * std::exp(x[0]); };
  return f;
}

namespace {

std::vector<std::vector<double>> grid_power_table(const GridPath& path, const LevyModel& model,
                                                  const std::vector<double>& grid, unsigned order,
                                                  std::vector<double>& increments) {
  std::vector<Expansion<double>> expansions;
  for (unsigned e = 1; e <= order; ++e) expansions.push_back(expand<double>(e, model));
  std::vector<std::vector<double>> table;
  double left = 0.0;
  for (double right : grid) {
    const auto w = window(path, left, right);
    std::vector<double> row{1.0};
    for (const auto& e : expansions) row.push_back(reconstruct_grid(e, w).reconstructed.back());
    table.push_back(std::move(row));
    const auto x = increment_series(w);
    increments.push_back(x.back());
    left = right;
  }
  return table;
}

}  // namespace

FunctionalValue<double> eval_functional(const FunctionalSpec<double>& spec, const GridPath& path,
                                        const LevyModel& model) {
  detail::check_grid(spec.grid);
  std::vector<double> increments;
  const auto table = grid_power_table(path, model, spec.grid, spec.order, increments);
  return detail::assemble(taylor_terms(spec), table, increments, spec.order, spec.value);
}

std::vector<TruncationRow> truncation_study(const FunctionalSpec<double>& spec, const std::vector<unsigned>& orders,
                                            const LevyModel& model, std::size_t batch, double dt, std::uint64_t seed,
                                            Substrate substrate) {
  if (orders.empty()) throw Error("taylor.invalid_order", "no truncation orders given");
  const unsigned top = *std::max_element(orders.begin(), orders.end());
  FunctionalSpec<double> full = spec;
  full.order = top;
  const auto terms = taylor_terms(full);
  const auto mv = moments_as<double>(model, std::max(top, 2u));

  std::vector<TruncationRow> rows;
  for (unsigned d : orders) rows.push_back({d, batch, 0.0, 0.0, 0.0});
  for (std::size_t p = 0; p < batch; ++p) {
    const auto path = simulate_grid(model, spec.grid.back(), dt, 0.0, seed, p);
    std::vector<double> increments;
    std::vector<std::vector<double>> table;
    if (substrate == Substrate::Grid) {
      table = grid_power_table(path, model, spec.grid, top, increments);
    } else {
      // Interval ends are read off the grid so that they coincide with jump times.
      std::vector<double> ends;
      for (double t : spec.grid) ends.push_back(path.time(path.grid_index(t)));
      table = interval_power_table(as_jump_path(path, mv), ends, top, &increments);
    }
    for (auto& row : rows) {
      const auto v = detail::assemble(terms, table, increments, row.order, spec.value);
      const double err = std::abs(v.approx - v.function_value);
      row.mean_abs_error += err / static_cast<double>(batch);
      row.max_abs_error = std::max(row.max_abs_error, err);
      row.max_abs_chaos_error = std::max(row.max_abs_chaos_error, std::abs(v.approx - v.truncated_direct));
    }
  }
  return rows;
}

}  // namespace levy_chaos

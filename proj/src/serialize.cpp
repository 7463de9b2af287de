#include "levy_chaos/serialize.hpp"

namespace levy_chaos {

void write_path_csv(std::ostream& out, const GridPath& path) {
  out << "step,t,dX,X\n";
  double x = 0.0;
  out << "0," << format_scalar(path.time(0)) << ",0,0\n";
  for (std::size_t l = 0; l < path.steps(); ++l) {
    x += path.dX[l];
    out << l + 1 << ',' << format_scalar(path.time(l + 1)) << ',' << format_scalar(path.dX[l]) << ','
        << format_scalar(x) << '\n';
  }
}

void write_diff_csv(std::ostream& out, const GridSeries& s) {
  out << "step,t,direct,reconstructed,diff\n";
  for (std::size_t k = 0; k < s.step.size(); ++k) {
    out << s.step[k] << ',' << format_scalar(s.time[k]) << ',' << format_scalar(s.direct[k]) << ','
        << format_scalar(s.reconstructed[k]) << ',' << format_scalar(s.diff[k]) << '\n';
  }
}

void write_convergence_csv(std::ostream& out, const std::vector<ConvergenceRow>& rows) {
  out << "dt,steps,max_abs_diff,terminal_diff\n";
  for (const auto& r : rows) {
    out << format_scalar(r.dt) << ',' << r.steps << ',' << format_scalar(r.max_abs_diff) << ','
        << format_scalar(r.terminal_diff) << '\n';
  }
}

void write_truncation_csv(std::ostream& out, const std::vector<TruncationRow>& rows) {
  out << "order,paths,mean_abs_error,max_abs_error,max_abs_chaos_error\n";
  for (const auto& r : rows) {
    out << r.order << ',' << r.paths << ',' << format_scalar(r.mean_abs_error) << ','
        << format_scalar(r.max_abs_error) << ',' << format_scalar(r.max_abs_chaos_error) << '\n';
  }
}

}  // namespace levy_chaos

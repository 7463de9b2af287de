#include "levy_chaos/ortho.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace levy_chaos::detail {

double equilibrated_condition(const std::vector<double>& mu, unsigned order) {
  Eigen::MatrixXd h(order, order);
  for (unsigned i = 0; i < order; ++i) {
    for (unsigned j = 0; j < order; ++j) {
      h(i, j) = mu[i + j] / std::sqrt(mu[2 * i] * mu[2 * j]);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  const double lo = ev.minCoeff();
  const double hi = ev.maxCoeff();
  if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
  return hi / lo;
}

}  // namespace levy_chaos::detail

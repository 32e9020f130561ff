#include "polyvar/inequalities.hpp"

#include <cmath>
#include <stdexcept>

namespace polyvar {

double power_inequality_defect(double x, double y, double p) {
  if (x < 0.0 || y < 0.0) {
    throw std::domain_error("power_inequality_defect: x, y must be >= 0");
  }
  if (p < 3.0) throw std::domain_error("power_inequality_defect: p must be >= 3");
  return std::pow(x + y, p) - std::pow(x, p) - std::pow(y, p) -
         p * std::pow(x, p - 1.0) * y - p * x * std::pow(y, p - 1.0);
}

std::pair<double, double> bn_lemma_defect(double x, double y, double p) {
  if (p <= 2.0) throw std::domain_error("bn_lemma_defect: p must be > 2");
  const double ax = std::abs(x), ay = std::abs(y);
  const double lhs = std::abs(
      std::pow(std::abs(x + y), p) - std::pow(ax, p) - std::pow(ay, p) -
      p * x * y * (std::pow(ax, p - 2.0) + std::pow(ay, p - 2.0)));
  const double bound = (ax <= ay) ? std::pow(ax, p - 1.0) * ay
                                  : ax * std::pow(ay, p - 1.0);
  return {lhs, bound};
}

std::pair<double, double> h_function(double t, const Eigen::VectorXd& u,
                                     const Eigen::VectorXd& phi,
                                     const RadialGrid& g, int N, int r) {
  const double q = 2.0 * N / (N - 2.0 * r);
  const Eigen::ArrayXd v = (t * u + phi).array();
  const Eigen::ArrayXd av = v.abs();
  const double h = (g.weights().array() * av.pow(q)).sum();
  const double hp =
      q * (g.weights().array() * av.pow(q - 2.0) * v * u.array()).sum();
  return {h, hp};
}

}  // namespace polyvar

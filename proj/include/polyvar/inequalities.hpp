#pragma once

// Standalone scalar oracles for the elementary inequalities the variational
// arguments rely on, plus the constraint profile h(t) = int |t u + phi|^q and
// its derivative.

#include <Eigen/Dense>
#include <utility>

#include "polyvar/grid.hpp"

namespace polyvar {

struct InequalityReport {
  long long samples = 0;
  long long violations = 0;
  double worst_defect = 0.0;
  double worst_x = 0.0;
  double worst_y = 0.0;
  double worst_p = 0.0;
};

/// (x+y)^p - x^p - y^p - p x^{p-1} y - p x y^{p-1}, nonnegative for
/// x, y >= 0 and p >= 3.  Throws std::domain_error outside that range.
double power_inequality_defect(double x, double y, double p);

/// Two-sided expansion bound: lhs = | |x+y|^p - |x|^p - |y|^p
/// - p x y (|x|^{p-2} + |y|^{p-2}) |; bound = |x|^{p-1}|y| when |x| <= |y|,
/// else |x||y|^{p-1} (unit-constant majorant; callers estimate the sharp
/// constant empirically as sup lhs/bound).  Requires p > 2.
std::pair<double, double> bn_lemma_defect(double x, double y, double p);

/// h(t) = int |t u + phi|^q and h'(t) = q int |t u + phi|^{q-2}(t u + phi) u
/// by quadrature, q = 2N/(N-2r).
std::pair<double, double> h_function(double t, const Eigen::VectorXd& u,
                                     const Eigen::VectorXd& phi,
                                     const RadialGrid& g, int N, int r);

}  // namespace polyvar

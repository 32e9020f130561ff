#pragma once

// Convex-duality checks for the ||phi|| > 1 regime: the Hoelder-dual closed
// form, the Lagrangian pairing, the dual objective, and the beta functionals
// over the two boundary-condition families.
//
// Conventions.  The pairing sign is fixed so that
//     L(u, p) = -1/2 int |p|^2 + int (B u) p,   B = discrete (-Lap)^{r/2},
// makes  sup_p L(u, p) = 1/2 ||u||_r^2  an identity (attained at p = Bu).
// The dual variable's representer is the exact discrete adjoint
//     ptilde = W^{-1} B^T W p,
// so that <p, Bu>_W = <ptilde, u>_W holds exactly in floating point, and
// weak duality  dual(p) <= 1/2 primal  follows from discrete Hoelder alone.
// For odd r the same composition applies with the gradient-form pairing (the
// seminorm operator ends in a radial derivative).

#include <Eigen/Dense>
#include <utility>

#include "polyvar/grid.hpp"
#include "polyvar/operators.hpp"

namespace polyvar {

struct DualReport {
  double dual_value = 0.0;
  double primal_value = 0.0;   ///< the solve value S (so the target is S/2)
  double gap = 0.0;            ///< primal/2 - dual
  double beta_theta = 0.0;
  double beta_zero = 0.0;
};

/// Discrete adjoint representer ptilde = W^{-1} B^T W p.
Eigen::VectorXd dual_representer(const RadialGrid& g, const Eigen::VectorXd& p,
                                 int r, Bc bc);

/// Hoelder-dual supremum  sup { int ptilde v : ||v||_q <= 1 }.
/// Returns {closed form ||ptilde||_{q'}, value attained by the explicit
/// maximizer v* ~ sign(ptilde)|ptilde|^{q'-1}}; both agree to rounding.
std::pair<double, double> holder_dual_sup(const RadialGrid& g,
                                          const Eigen::VectorXd& ptilde,
                                          double q);

/// L(u, p) by quadrature.
double lagrangian(const RadialGrid& g, const Eigen::VectorXd& u,
                  const Eigen::VectorXd& p, int r, Bc bc);

/// Dual objective  -1/2 ||p||^2 - beta(p)  with
/// beta(p) = ||ptilde||_{q'} - int ptilde phi  (closed form via density).
double dual_objective(const RadialGrid& g, const Eigen::VectorXd& p,
                      const Eigen::VectorXd& phi, int N, int r, Bc bc);

/// beta over the Navier and Dirichlet families.  Closed forms coincide by
/// the density identity; the struct also carries direct constrained
/// maximization estimates over each discrete family for cross-validation.
struct BetaPair {
  double beta_theta = 0.0;
  double beta_zero = 0.0;
  double direct_theta = 0.0;
  double direct_zero = 0.0;
};
BetaPair beta_pair(const RadialGrid& g, const Eigen::VectorXd& p,
                   const Eigen::VectorXd& phi, int N, int r);

/// Dual witness p = -B u built from a converged minimizer.
Eigen::VectorXd dual_witness(const RadialGrid& g, const Eigen::VectorXd& u,
                             int r, Bc bc);

}  // namespace polyvar

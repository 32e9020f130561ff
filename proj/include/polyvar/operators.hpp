#pragma once

// Boundary-condition families, the order-r seminorm, and L^p norms.
//
// Two essential-BC families on the unit ball:
//   Dirichlet: u and its first r-1 radial derivatives vanish at rho = 1.
//   Navier:    u and its discrete iterated Laplacians (-Lap)^k vanish at
//              rho = 1 for k = 0..m-1 with m = ceil(r/2) (the conditions the
//              seminorm's integrand can see); higher-order conditions are
//              natural and only checked a posteriori on minimizers.
// The Dirichlet subspace is nested inside the Navier one on every grid.

#include <Eigen/Dense>
#include "polyvar/grid.hpp"

namespace polyvar {

enum class Bc { dirichlet, navier };

/// Number of essential boundary constraints for (r, bc).
int essential_count(int r, Bc bc);

/// Rows of the essential boundary constraint functionals at rho = 1.
/// Dirichlet: derivative functionals of order 0..r-1 built from the last six
/// nodes.  Navier: the last row of (-Lap)^k for k = 0..m-1.
Eigen::MatrixXd constraint_matrix(const RadialGrid& g, int r, Bc bc);

/// Orthonormal basis of the null space of the essential constraints
/// (columns span the discrete BC-compliant subspace).
Eigen::MatrixXd nullspace_basis(const RadialGrid& g, int r, Bc bc);

/// Euclidean orthogonal projection onto the essential-BC subspace,
/// P = I - C^T (C C^T)^{-1} C.  Idempotent.
Eigen::VectorXd enforce_bc(const RadialGrid& g, const Eigen::VectorXd& u,
                           int r, Bc bc);

/// Discrete radial Laplacian  Lap u = u'' + (N-1) rho^{-1} u'.
Eigen::VectorXd radial_laplacian(const RadialGrid& g, const Eigen::VectorXd& u);

/// j-fold (-Lap) with boundary values imposed per bc before each application.
/// Rejects j < 0 or j > r.
Eigen::VectorXd iterated_laplacian(const RadialGrid& g, const Eigen::VectorXd& u,
                                   int j, Bc bc, int r);

/// L^p norm over the ball by grid quadrature; rejects p < 1.
double lp_norm(const RadialGrid& g, const Eigen::VectorXd& u, double p);

/// The first-order seminorm operator B with  ||u||_r^2 = (Bu)^T W (Bu):
/// even r: B = (-Lap) Z ... (-Lap) Z  (r/2 factors, Z zeroes the boundary
/// node per the bc family); odd r: a radial derivative is appended.
Eigen::MatrixXd seminorm_operator(const RadialGrid& g, int r, Bc bc);

/// Quadratic form of the seminorm, A = B^T W B (dense, symmetric PSD).
Eigen::MatrixXd seminorm_form(const RadialGrid& g, int r, Bc bc);

/// ||u||_r^2.  If check_bc, essential-BC violations above tol raise.
double hr_seminorm_sq(const RadialGrid& g, const Eigen::VectorXd& u, int r,
                      Bc bc, bool check_bc = true, double bc_tol = 1e-8);

}  // namespace polyvar

#include "polyvar/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace polyvar {

int essential_count(int r, Bc bc) {
  return bc == Bc::dirichlet ? r : (r + 1) / 2;
}

Eigen::MatrixXd constraint_matrix(const RadialGrid& g, int r, Bc bc) {
  const int n = g.size();
  if (bc == Bc::dirichlet) {
    // Derivative functionals of order 0..r-1 at rho = 1 from the last 6 nodes.
    const int k0 = n - 6;
    Eigen::VectorXd xs = g.nodes().segment(k0, 6);
    const Eigen::MatrixXd w = fornberg_weights(1.0, xs, std::max(r - 1, 0));
    Eigen::MatrixXd C = Eigen::MatrixXd::Zero(r, n);
    for (int k = 0; k < r; ++k) {
      for (int t = 0; t < 6; ++t) C(k, k0 + t) = w(t, k);
    }
    return C;
  }
  const int m = (r + 1) / 2;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(m, n);
  C(0, n - 1) = 1.0;
  Eigen::MatrixXd M = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k < m; ++k) {
    M = g.neg_laplacian() * M;
    C.row(k) = M.row(n - 1);
  }
  return C;
}

Eigen::MatrixXd nullspace_basis(const RadialGrid& g, int r, Bc bc) {
  const Eigen::MatrixXd C = constraint_matrix(g, r, bc);
  const int n = g.size();
  const int k = static_cast<int>(C.rows());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(C.transpose());
  Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return Q.rightCols(n - k);
}

Eigen::VectorXd enforce_bc(const RadialGrid& g, const Eigen::VectorXd& u,
                           int r, Bc bc) {
  const Eigen::MatrixXd C = constraint_matrix(g, r, bc);
  const Eigen::VectorXd cu = C * u;
  const Eigen::VectorXd mult = (C * C.transpose()).ldlt().solve(cu);
  return u - C.transpose() * mult;
}

Eigen::VectorXd radial_laplacian(const RadialGrid& g, const Eigen::VectorXd& u) {
  return g.laplacian() * u;
}

Eigen::VectorXd iterated_laplacian(const RadialGrid& g, const Eigen::VectorXd& u,
                                   int j, Bc bc, int r) {
  if (j < 0 || j > r) {
    throw std::invalid_argument("iterated_laplacian: need 0 <= j <= r");
  }
  const int n = g.size();
  Eigen::VectorXd v = u;
  for (int k = 0; k < j; ++k) {
    Eigen::VectorXd z = v;
    z[n - 1] = 0.0;  // boundary value imposed per bc before each application
    v = g.neg_laplacian() * z;
  }
  return v;
}

double lp_norm(const RadialGrid& g, const Eigen::VectorXd& u, double p) {
  if (p < 1.0) throw std::invalid_argument("lp_norm: need p >= 1");
  const Eigen::ArrayXd a = u.array().abs().pow(p);
  return std::pow(g.weights().dot(a.matrix()), 1.0 / p);
}

Eigen::MatrixXd seminorm_operator(const RadialGrid& g, int r, Bc bc) {
  const int n = g.size();
  Eigen::MatrixXd Z = Eigen::MatrixXd::Identity(n, n);
  Z(n - 1, n - 1) = 0.0;
  Eigen::MatrixXd B = Eigen::MatrixXd::Identity(n, n);
  const int m = (r + 1) / 2;
  for (int k = 1; k <= r / 2; ++k) {
    const bool zero_first = (bc == Bc::navier && (k - 1) < m) || k == 1;
    if (zero_first) B = Z * B;
    B = g.neg_laplacian() * B;
  }
  if (r % 2 == 1) {
    const bool zero_first = (bc == Bc::navier && (r - 1) / 2 <= m - 1) || r == 1;
    if (zero_first) B = Z * B;
    B = g.d1() * B;
  }
  return B;
}

Eigen::MatrixXd seminorm_form(const RadialGrid& g, int r, Bc bc) {
  const Eigen::MatrixXd B = seminorm_operator(g, r, bc);
  return B.transpose() * g.weights().asDiagonal() * B;
}

double hr_seminorm_sq(const RadialGrid& g, const Eigen::VectorXd& u, int r,
                      Bc bc, bool check_bc, double bc_tol) {
  if (check_bc) {
    const Eigen::MatrixXd C = constraint_matrix(g, r, bc);
    const double res = (C * u).cwiseAbs().maxCoeff();
    if (res > bc_tol * (1.0 + u.cwiseAbs().maxCoeff())) {
      throw std::domain_error("hr_seminorm_sq: essential boundary conditions violated");
    }
  }
  const Eigen::VectorXd bu = seminorm_operator(g, r, bc) * u;
  return g.weights().dot(bu.cwiseAbs2());
}

}  // namespace polyvar

#include "polyvar/duality.hpp"

#include <cmath>

namespace polyvar {

namespace {

Eigen::ArrayXd signed_pow(const Eigen::ArrayXd& v, double p) {
  // |v|^{p-1} sign(v)
  return v.abs().pow(p - 1.0) * v.sign();
}

double conjugate_exponent(double q) { return q / (q - 1.0); }

}  // namespace

Eigen::VectorXd dual_representer(const RadialGrid& g, const Eigen::VectorXd& p,
                                 int r, Bc bc) {
  const Eigen::MatrixXd B = seminorm_operator(g, r, bc);
  const Eigen::VectorXd btwp = B.transpose() * g.weights().cwiseProduct(p);
  return btwp.cwiseQuotient(g.weights());
}

std::pair<double, double> holder_dual_sup(const RadialGrid& g,
                                          const Eigen::VectorXd& ptilde,
                                          double q) {
  const double qp = conjugate_exponent(q);
  const double closed = lp_norm(g, ptilde, qp);
  if (closed == 0.0) return {0.0, 0.0};
  Eigen::VectorXd vstar = signed_pow(ptilde.array(), qp).matrix();
  vstar /= lp_norm(g, vstar, q);
  const double attained = g.weights().dot(ptilde.cwiseProduct(vstar));
  return {closed, attained};
}

double lagrangian(const RadialGrid& g, const Eigen::VectorXd& u,
                  const Eigen::VectorXd& p, int r, Bc bc) {
  const Eigen::MatrixXd B = seminorm_operator(g, r, bc);
  const Eigen::VectorXd bu = B * u;
  return -0.5 * g.weights().dot(p.cwiseAbs2()) +
         g.weights().dot(bu.cwiseProduct(p));
}

double dual_objective(const RadialGrid& g, const Eigen::VectorXd& p,
                      const Eigen::VectorXd& phi, int N, int r, Bc bc) {
  const double q = 2.0 * N / (N - 2.0 * r);
  const Eigen::VectorXd pt = dual_representer(g, p, r, bc);
  const double beta =
      holder_dual_sup(g, pt, q).first - g.weights().dot(pt.cwiseProduct(phi));
  return -0.5 * g.weights().dot(p.cwiseAbs2()) - beta;
}

namespace {

// Direct constrained maximization of  int ptilde v  over
// { v in phi + span(Z) : ||v||_q = 1 } by projected gradient ascent on the
// constraint manifold (phi is assumed BC-compliant so the feasible set is a
// q-sphere slice of the subspace).
double direct_beta(const RadialGrid& g, const Eigen::VectorXd& ptilde,
                   const Eigen::VectorXd& phi, double q,
                   const Eigen::MatrixXd& Z) {
  const double qp = conjugate_exponent(q);
  // seed: subspace projection of the unconstrained Hoelder maximizer
  Eigen::VectorXd w = Z * (Z.transpose() * signed_pow(ptilde.array(), qp).matrix());
  double nw = lp_norm(g, w, q);
  if (nw < 1e-300) return -g.weights().dot(ptilde.cwiseProduct(phi));
  w /= nw;
  const Eigen::VectorXd c = g.weights().cwiseProduct(ptilde);
  double fbest = c.dot(w);
  for (int it = 0; it < 60; ++it) {
    // Riemannian gradient: project the ascent direction onto the tangent of
    // the q-sphere within the subspace, step, renormalize.
    const Eigen::VectorXd grad = Z * (Z.transpose() * c);
    const Eigen::VectorXd normal =
        Z * (Z.transpose() *
             (q * g.weights().array() * signed_pow(w.array(), q)).matrix());
    const double nn = normal.squaredNorm();
    Eigen::VectorXd d = grad;
    if (nn > 0.0) d -= (grad.dot(normal) / nn) * normal;
    const double dn = d.norm();
    if (dn < 1e-14) break;
    double step = 0.5 / dn;
    bool improved = false;
    for (int ls = 0; ls < 20; ++ls) {
      Eigen::VectorXd wn = w + step * d;
      wn /= lp_norm(g, wn, q);
      const double f = c.dot(wn);
      if (f > fbest + 1e-15) {
        w = wn;
        fbest = f;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return fbest - c.dot(phi);
}

}  // namespace

BetaPair beta_pair(const RadialGrid& g, const Eigen::VectorXd& p,
                   const Eigen::VectorXd& phi, int N, int r) {
  const double q = 2.0 * N / (N - 2.0 * r);
  BetaPair out;
  const Eigen::VectorXd pt = dual_representer(g, p, r, Bc::navier);
  const double closed =
      holder_dual_sup(g, pt, q).first - g.weights().dot(pt.cwiseProduct(phi));
  out.beta_theta = closed;
  out.beta_zero = closed;  // density identity: the closed form is family-free
  const Eigen::MatrixXd Zn = nullspace_basis(g, r, Bc::navier);
  const Eigen::MatrixXd Zd = nullspace_basis(g, r, Bc::dirichlet);
  out.direct_theta = direct_beta(g, pt, phi, q, Zn);
  out.direct_zero = direct_beta(g, pt, phi, q, Zd);
  return out;
}

Eigen::VectorXd dual_witness(const RadialGrid& g, const Eigen::VectorXd& u,
                             int r, Bc bc) {
  return -(seminorm_operator(g, r, bc) * u);
}

}  // namespace polyvar

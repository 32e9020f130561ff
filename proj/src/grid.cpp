#include "polyvar/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace polyvar {

double sphere_surface(int N) {
  return 2.0 * std::pow(std::numbers::pi, N / 2.0) / std::tgamma(N / 2.0);
}

double ball_volume(int N) { return sphere_surface(N) / N; }

Eigen::MatrixXd fornberg_weights(double x0, const Eigen::VectorXd& xs, int m) {
  const int n = static_cast<int>(xs.size());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, m + 1);
  double c1 = 1.0;
  double c4 = xs[0] - x0;
  c(0, 0) = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = xs[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = xs[i] - xs[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
        }
        c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
      }
      for (int k = mn; k >= 1; --k) {
        c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
      }
      c(j, 0) = c4 * c(j, 0) / c3;
    }
    c1 = c2;
  }
  return c;
}

RadialGrid::RadialGrid(int N, int n, GridKind kind, double gamma)
    : N_(N), kind_(kind) {
  if (N < 1) throw std::invalid_argument("RadialGrid: dimension must be >= 1");
  if (n < 8) throw std::invalid_argument("RadialGrid: need at least 8 nodes");
  if (n % 2 != 0) throw std::invalid_argument("RadialGrid: node count must be even");

  // Parameter nodes s_i = i/n, i = 0..n; map to rho and drop the origin.
  Eigen::VectorXd rho(n + 1), drho(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double s = static_cast<double>(i) / n;
    if (kind == GridKind::uniform) {
      rho[i] = s;
      drho[i] = 1.0;
    } else {
      rho[i] = std::pow(s, gamma);
      drho[i] = (i == 0) ? 0.0 : gamma * std::pow(s, gamma - 1.0);
    }
  }
  // Composite Simpson coefficients in s.
  Eigen::VectorXd co = Eigen::VectorXd::Ones(n + 1);
  for (int i = 1; i < n; ++i) co[i] = (i % 2 == 1) ? 4.0 : 2.0;
  const double omega = sphere_surface(N);
  nodes_ = rho.segment(1, n);
  weights_.resize(n);
  for (int i = 1; i <= n; ++i) {
    weights_[i - 1] =
        co[i] / (3.0 * n) * std::pow(rho[i], N - 1) * drho[i] * omega;
  }
  min_spacing_ = (nodes_.tail(n - 1) - nodes_.head(n - 1)).minCoeff();

  // 5-point differentiation matrices.
  D1_ = Eigen::MatrixXd::Zero(n, n);
  D2_ = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    int lo = i - 2, hi = i + 2;
    if (hi >= n) {
      hi = n - 1;
      lo = hi - 4;
    }
    if (lo >= 0) {
      Eigen::VectorXd xs(5);
      for (int k = 0; k < 5; ++k) xs[k] = nodes_[lo + k];
      const Eigen::MatrixXd w = fornberg_weights(nodes_[i], xs, 2);
      for (int k = 0; k < 5; ++k) {
        D1_(i, lo + k) += w(k, 1);
        D2_(i, lo + k) += w(k, 2);
      }
    } else {
      // Even-mirror rule: stencil points at -rho_k carry the value u(rho_k).
      Eigen::VectorXd xs(5);
      std::vector<int> idx(5);
      for (int k = 0; k < 5; ++k) {
        const int j = lo + k;
        if (j >= 0) {
          xs[k] = nodes_[j];
          idx[k] = j;
        } else {
          xs[k] = -nodes_[-j - 1];
          idx[k] = -j - 1;
        }
      }
      const Eigen::MatrixXd w = fornberg_weights(nodes_[i], xs, 2);
      for (int k = 0; k < 5; ++k) {
        D1_(i, idx[k]) += w(k, 1);
        D2_(i, idx[k]) += w(k, 2);
      }
    }
  }
  Lap_ = D2_ + (N - 1) * nodes_.cwiseInverse().asDiagonal() * D1_;
  NegLap_ = -Lap_;
}

double RadialGrid::integrate(const Eigen::VectorXd& f) const {
  return weights_.dot(f);
}

std::shared_ptr<const RadialGrid> make_radial_grid(int N, int n, GridKind kind) {
  return std::make_shared<const RadialGrid>(N, n, kind);
}

}  // namespace polyvar

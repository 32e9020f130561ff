#pragma once

// Radial grids and quadrature on the unit ball.
//
// Functions are radial profiles sampled on nodes rho_1 < ... < rho_n = 1 in
// (0,1]; the origin is excluded and regularity there is handled by an
// even-extension (mirror) rule in the differentiation stencils.  Quadrature
// weights realize  int_Omega f dx = omega_{N-1} int_0^1 f(rho) rho^{N-1} drho
// with the surface factor folded in.

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

namespace polyvar {

/// Surface area of the unit sphere S^{N-1} in R^N.
double sphere_surface(int N);

/// Volume of the unit ball in R^N.
double ball_volume(int N);

/// Fornberg finite-difference weights: derivatives 0..m at x0 from nodes xs.
/// Returns an (xs.size() x (m+1)) matrix; column k holds the weights of the
/// k-th derivative functional.
Eigen::MatrixXd fornberg_weights(double x0, const Eigen::VectorXd& xs, int m);

enum class GridKind { uniform, graded };

class RadialGrid {
 public:
  /// Build a radial grid on (0,1] with n_nodes nodes (n_nodes even, >= 8).
  /// Composite Simpson quadrature in the grading parameter; 5-point
  /// finite-difference derivative matrices with an even-mirror rule near the
  /// origin and one-sided stencils clamped at the right boundary.
  RadialGrid(int N, int n_nodes, GridKind kind = GridKind::uniform,
             double grading_exponent = 2.0);

  int dimension() const { return N_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  GridKind kind() const { return kind_; }
  double min_spacing() const { return min_spacing_; }

  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& weights() const { return weights_; }
  const Eigen::MatrixXd& d1() const { return D1_; }
  const Eigen::MatrixXd& d2() const { return D2_; }
  const Eigen::MatrixXd& laplacian() const { return Lap_; }
  const Eigen::MatrixXd& neg_laplacian() const { return NegLap_; }

  /// Quadrature of a sampled integrand over the ball.
  double integrate(const Eigen::VectorXd& f) const;

 private:
  int N_;
  GridKind kind_;
  double min_spacing_;
  Eigen::VectorXd nodes_;
  Eigen::VectorXd weights_;
  Eigen::MatrixXd D1_, D2_, Lap_, NegLap_;
};

/// Factory with validation: rejects n_nodes < 8 or N < 1.
std::shared_ptr<const RadialGrid> make_radial_grid(
    int N, int n_nodes, GridKind kind = GridKind::uniform);

/// A radial function sampled on a grid.
struct Profile {
  std::shared_ptr<const RadialGrid> grid;
  Eigen::VectorXd values;
};

}  // namespace polyvar

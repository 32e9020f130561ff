#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polyvar/grid.hpp"

using namespace polyvar;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("sphere surface and ball volume match known values") {
  CHECK(sphere_surface(3) == doctest::Approx(4.0 * kPi).epsilon(1e-12));
  CHECK(sphere_surface(2) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
  CHECK(ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-12));
  CHECK(ball_volume(1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("quadrature integrates radial polynomials on the ball") {
  auto g = make_radial_grid(3, 400);
  // int_B 1 = |B|
  Eigen::VectorXd one = Eigen::VectorXd::Ones(g->nodes().size());
  CHECK(g->integrate(one) == doctest::Approx(ball_volume(3)).epsilon(1e-8));
  // int_B rho^2 = 4 pi / 5
  Eigen::VectorXd r2 = g->nodes().cwiseAbs2();
  CHECK(g->integrate(r2) == doctest::Approx(4.0 * kPi / 5.0).epsilon(1e-8));
}

TEST_CASE("difference matrices are exact on even quartics") {
  // Radial profiles are even in rho; the near-origin stencils use an
  // even-mirror rule, so the probe must be an even function.
  auto g = make_radial_grid(3, 200);
  const Eigen::ArrayXd rho = g->nodes().array();
  const Eigen::VectorXd u = (rho * rho * rho * rho).matrix();
  const Eigen::VectorXd d1 = g->d1() * u;
  const Eigen::VectorXd d2 = g->d2() * u;
  for (int i = 0; i < rho.size(); ++i) {
    CHECK(d1[i] ==
          doctest::Approx(4.0 * rho[i] * rho[i] * rho[i]).epsilon(1e-8));
    CHECK(d2[i] == doctest::Approx(12.0 * rho[i] * rho[i]).epsilon(1e-6));
  }
}

TEST_CASE("laplacian of rho^2 is the constant 2N") {
  for (int N : {3, 5, 7}) {
    auto g = make_radial_grid(N, 100);
    const Eigen::VectorXd lap = g->laplacian() * g->nodes().cwiseAbs2();
    for (int i = 0; i < lap.size(); ++i) {
      CHECK(lap[i] == doctest::Approx(2.0 * N).epsilon(1e-8));
    }
  }
}

TEST_CASE("graded grid clusters nodes near the origin") {
  auto g = make_radial_grid(3, 100, GridKind::graded);
  const Eigen::VectorXd& rho = g->nodes();
  CHECK(rho[0] > 0.0);
  CHECK(rho[rho.size() - 1] == doctest::Approx(1.0));
  for (int i = 1; i < rho.size(); ++i) CHECK(rho[i] > rho[i - 1]);
  CHECK(rho[0] < 1.0 / 100.0);  // finer than uniform near 0
  CHECK(g->min_spacing() > 0.0);
}

TEST_CASE("factory rejects invalid parameters") {
  CHECK_THROWS(make_radial_grid(3, 4));
  CHECK_THROWS(make_radial_grid(0, 100));
  CHECK_THROWS(make_radial_grid(3, 101));  // Simpson needs an even count
}

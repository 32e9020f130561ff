#include <doctest.h>

#include <cmath>

#include "polyvar/bubble.hpp"

using namespace polyvar;

TEST_CASE("bubble value at the origin and decay") {
  BubbleSpec spec;
  spec.epsilon = 0.3;
  // u_eps(0) = eps^{-(N-2r)/2}
  CHECK(bubble_eval(spec, 3, 1, 0.0) ==
        doctest::Approx(std::pow(0.3, -0.5)).epsilon(1e-12));
  CHECK(bubble_eval(spec, 3, 1, 2.0) < bubble_eval(spec, 3, 1, 1.0));
}

TEST_CASE("cutoff factor is a smooth plateau") {
  CHECK(cutoff_factor(0.0, 0.9) == 1.0);
  CHECK(cutoff_factor(0.44, 0.9) == 1.0);
  CHECK(cutoff_factor(0.95, 0.9) == 0.0);
  CHECK(cutoff_factor(0.6, 0.9) > cutoff_factor(0.7, 0.9));
  CHECK(cutoff_factor(0.6, 0.9) < 1.0);
}

TEST_CASE("closed form matches the hand Laplacian for N=3, r=1") {
  // u = (1+t^2)^{-1/2}  =>  (-Lap) u = 3 (1+t^2)^{-5/2} in R^3
  BubbleSpec spec;
  spec.epsilon = 1.0;
  for (double t : {0.1, 0.5, 1.3}) {
    const double exact = 3.0 * std::pow(1.0 + t * t, -2.5);
    CHECK(bubble_polyharmonic(spec, 3, 1, 1, t) ==
          doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("closed form agrees with the nested-stencil oracle") {
  BubbleSpec spec;
  spec.epsilon = 0.3;
  for (auto [N, r] : {std::pair{3, 1}, std::pair{5, 2}}) {
    const auto f = [&, N = N, r = r](double t) {
      return bubble_eval(spec, N, r, t);
    };
    for (int j = 1; j <= r; ++j) {
      for (double t : {0.1, 0.4, 0.9}) {
        const double closed = bubble_polyharmonic(spec, N, r, j, t);
        const double oracle = fd_iterated_laplacian(f, N, j, t);
        CHECK(std::abs(closed - oracle) <=
              1e-5 * std::max(std::abs(oracle), 1e-12));
      }
    }
  }
}

TEST_CASE("legacy coefficient table disagrees with the oracle at r=2") {
  // The retained legacy closed form is defective beyond first order; the
  // corrected recursion is the one that matches finite differences.
  BubbleSpec spec;
  spec.epsilon = 0.3;
  const auto f = [&](double t) { return bubble_eval(spec, 5, 2, t); };
  double worst_legacy = 0.0;
  for (double t : {0.1, 0.4, 0.9}) {
    const double oracle = fd_iterated_laplacian(f, 5, 2, t);
    const double legacy = legacy_polyharmonic(spec, 5, 2, 2, t);
    worst_legacy = std::max(
        worst_legacy, std::abs(legacy - oracle) / std::abs(oracle));
  }
  CHECK(worst_legacy > 1e-2);
}

TEST_CASE("derivative closed form matches a finite difference") {
  BubbleSpec spec;
  spec.epsilon = 0.3;
  const double t = 0.5, h = 1e-5;
  const double fd = (bubble_polyharmonic(spec, 5, 2, 1, t + h) -
                     bubble_polyharmonic(spec, 5, 2, 1, t - h)) /
                    (2.0 * h);
  CHECK(bubble_polyharmonic_deriv(spec, 5, 2, 1, t) ==
        doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("closed-form preconditions") {
  BubbleSpec cut;
  cut.cutoff_radius = 0.9;
  CHECK_THROWS(bubble_polyharmonic(cut, 3, 1, 1, 0.5));
  BubbleSpec spec;
  CHECK_THROWS(bubble_polyharmonic(spec, 3, 1, 0, 0.5));
  CHECK_THROWS(bubble_polyharmonic(spec, 3, 1, 2, 0.5));
}

TEST_CASE("base polynomial of the recursion is the constant 1") {
  const auto [coeffs, m] = polyharmonic_poly(5, 2, 0);
  REQUIRE(coeffs.size() == 1);
  CHECK(coeffs[0] == doctest::Approx(1.0));
  CHECK(m == doctest::Approx(0.5));
}

TEST_CASE("whole-space integral constant for N=3, r=1") {
  // omega_2 int_0^inf t^2 (1+t^2)^{-5/2} dt = 4 pi / 3
  CHECK(constant_D_integral(3, 1) ==
        doctest::Approx(4.0 * std::acos(-1.0) / 3.0).epsilon(1e-7));
}

TEST_CASE("norm asymptotics validate their sweep") {
  CHECK_THROWS(bubble_norms(3, 1, {0.1, 0.2}));        // not decreasing
  CHECK_THROWS(bubble_norms(3, 1, {0.4, 0.2}));        // too few
  CHECK_THROWS(bubble_norms(3, 1, {0.4, 0.2, 1e-5}));  // under-resolved
}

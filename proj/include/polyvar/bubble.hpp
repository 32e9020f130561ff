#pragma once

// The extremal (Aubin-Talenti) bubble profile, closed forms for its iterated
// Laplacians, and epsilon-asymptotics of its norms.
//
// Pure bubble:  u_eps(t) = eps^{(N-2r)/2} / (eps^2 + t^2)^{(N-2r)/2}.
// With s = t^2 the j-fold (-Lap) of the eps = 1 profile is a rational
// function A_j(s) (1+s)^{-m_j}, m_j = (N-2r)/2 + 2j, generated by the
// polynomial recursion
//     B = (1+s) A' - m A,
//     A_{j+1} = -[ 2N (1+s) B + 4 s (1+s) B' - 4 (m+1) s B ],
// and scaling gives (-Lap)^j u_eps(t) = eps^{-(N-2r)/2 - 2j} f_j(t/eps).
//
// A previously circulated coefficient-table closed form for the same
// quantity is retained for comparison (legacy_polyharmonic); it disagrees
// with the finite-difference oracle and with the recursion, and the tests
// document that defect rather than silently substituting.

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "polyvar/grid.hpp"

namespace polyvar {

struct BubbleSpec {
  double epsilon = 0.3;
  /// Cutoff outer radius R in (0,1]; the smooth transition lives on
  /// [R/2, R].  R = 0 means no cutoff.
  double cutoff_radius = 0.0;
};

/// Coefficients of the legacy closed-form table.
long long coeff_K(int j, int N, int r);
long long coeff_D(int i, int j, int r);
long long coeff_E(int i, int j, int N);

struct CoeffTable {
  int N = 0, r = 0;
  /// G(i,j) = 2^i binom(j,i) K_j D(i,j) E(i,j), 0 <= i <= j <= r.
  std::vector<std::vector<long long>> G;
};
CoeffTable make_coeff_table(int N, int r);

/// Smooth cutoff: 1 on [0, R/2], exp(1 - 1/(1-s^2)) transition on [R/2, R]
/// with s = (t - R/2)/(R/2), 0 beyond R.
double cutoff_factor(double t, double R);

/// Bubble value at radius t (cutoff applied if configured).
double bubble_eval(const BubbleSpec& spec, int N, int r, double t);

/// Numerator polynomial A_j (coefficients in s = t^2) and exponent m_j of
/// the recursion closed form for the eps = 1 pure bubble.
std::pair<std::vector<double>, double> polyharmonic_poly(int N, int r, int j);

/// (-Lap)^j u_eps(t) via the recursion closed form.  Rejects cutoff specs
/// (the closed form holds only for the pure bubble) and j outside [1, r].
double bubble_polyharmonic(const BubbleSpec& spec, int N, int r, int j, double t);

/// Radial derivative d/dt of (-Lap)^j u_eps(t), closed form.
double bubble_polyharmonic_deriv(const BubbleSpec& spec, int N, int r, int j,
                                 double t);

/// (-Lap)^j u_eps(t) via the legacy coefficient table, as printed:
/// eps^{(N-2r+4j)/2} sum_i G(i,j) t^{2i} / (eps^2+t^2)^{(N-2r+4j)/2}.
double legacy_polyharmonic(const BubbleSpec& spec, int N, int r, int j, double t);

/// Iterated (-Lap)^j of an arbitrary smooth radial function by nested
/// 5-point stencils with per-level spacing h = 0.55 eps_mach^{1/(2j+6)} and
/// one Richardson step (h, h/2).  Rounding-stable up to j = 3; used as the
/// ground-truth oracle for the closed forms.
double fd_iterated_laplacian(const std::function<double(double)>& f, int N,
                             int j, double x);

/// Radial derivative of (-Lap)^j f by the same nested scheme.
double fd_iterated_laplacian_deriv(const std::function<double(double)>& f,
                                   int N, int j, double x);

struct BubbleNormsReport {
  std::vector<double> epsilons;
  std::vector<double> seminorm_sq;         ///< ||u_eps||_r^2, pure bubble on the ball
  std::vector<double> lq_norm_sq;          ///< ||u_eps||_{L^{2*r}}^2, same
  std::vector<double> cutoff_seminorm_sq;  ///< with the spec'd cutoff applied
  double K_hat = 0.0;        ///< two-term ladder extrapolation, exponents {p, p+2}
  double K_hat_richardson = 0.0;  ///< level-1 Richardson on the two smallest eps
  double fitted_exponent = 0.0;   ///< from successive differences
  double lq_sq_limit = 0.0;
  double S_hat = 0.0;        ///< K_hat / lq_sq_limit
};

/// Norm asymptotics over a decreasing eps sweep.  Rejects eps below
/// 5x the quadrature spacing (under-resolved) or non-decreasing sweeps.
BubbleNormsReport bubble_norms(int N, int r, const std::vector<double>& epsilons,
                               double cutoff_radius = 0.9, int quad_nodes = 4000);

/// omega_{N-1} int_0^inf rho^{N-1} (1+rho^2)^{-(N+2r)/2} drho, adaptive
/// quadrature, absolute error < 1e-8.
double constant_D_integral(int N, int r);

}  // namespace polyvar

#include "polyvar/bubble.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace polyvar {

namespace {

// -- small dense polynomial helpers (coefficients in ascending powers) -------

using Poly = std::vector<double>;

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly poly_scale(const Poly& a, double c) {
  Poly out = a;
  for (double& v : out) v *= c;
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_der(const Poly& a) {
  if (a.size() <= 1) return {0.0};
  Poly out(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) out[i - 1] = i * a[i];
  return out;
}

double poly_eval(const Poly& a, double x) {
  double v = 0.0;
  for (size_t i = a.size(); i-- > 0;) v = v * x + a[i];
  return v;
}

}  // namespace

long long coeff_K(int j, int N, int r) {
  long long v = 1;
  for (int h = 0; h < j; ++h) v *= (N - 2 * r + 2 * h);
  return v;
}

long long coeff_D(int i, int j, int r) {
  if (i == 0) return 1;
  long long v = 1;
  for (int h = 0; h < j; ++h) v *= (r - h);
  return v;
}

long long coeff_E(int i, int j, int N) {
  if (i >= j + 1) return 0;
  if (i == j) return 1;
  long long v = 1;
  for (int h = 0; h < j; ++h) v *= (N + 2 * h);
  return v;
}

namespace {
long long binomial(int n, int k) {
  long long v = 1;
  for (int i = 1; i <= k; ++i) v = v * (n - k + i) / i;
  return v;
}
}  // namespace

CoeffTable make_coeff_table(int N, int r) {
  CoeffTable t;
  t.N = N;
  t.r = r;
  t.G.assign(r + 1, std::vector<long long>(r + 1, 0));
  for (int j = 0; j <= r; ++j) {
    for (int i = 0; i <= j; ++i) {
      t.G[i][j] = (1LL << i) * binomial(j, i) * coeff_K(j, N, r) *
                  coeff_D(i, j, r) * coeff_E(i, j, N);
    }
  }
  return t;
}

double cutoff_factor(double t, double R) {
  if (R <= 0.0) return 1.0;
  if (t <= R / 2) return 1.0;
  if (t >= R) return 0.0;
  const double s = (t - R / 2) / (R / 2);
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double bubble_eval(const BubbleSpec& spec, int N, int r, double t) {
  const double a = (N - 2 * r) / 2.0;
  const double eps = spec.epsilon;
  const double v = std::pow(eps, a) / std::pow(eps * eps + t * t, a);
  return v * cutoff_factor(t, spec.cutoff_radius);
}

std::pair<std::vector<double>, double> polyharmonic_poly(int N, int r, int j) {
  double m = (N - 2 * r) / 2.0;
  Poly A = {1.0};
  for (int k = 0; k < j; ++k) {
    const Poly Ap = poly_der(A);
    const Poly B = poly_add(poly_mul({1.0, 1.0}, Ap), poly_scale(A, -m));
    const Poly Bp = poly_der(B);
    Poly nxt = poly_add(poly_mul({2.0 * N, 2.0 * N}, B),
                        poly_mul({0.0, 4.0, 4.0}, Bp));
    nxt = poly_add(nxt, poly_mul({0.0, -4.0 * (m + 1)}, B));
    A = poly_scale(nxt, -1.0);
    m += 2.0;
  }
  return {A, m};
}

double bubble_polyharmonic(const BubbleSpec& spec, int N, int r, int j,
                           double t) {
  if (spec.cutoff_radius > 0.0) {
    throw std::invalid_argument(
        "bubble_polyharmonic: closed form holds only for the pure bubble");
  }
  if (j < 1 || j > r) {
    throw std::invalid_argument("bubble_polyharmonic: need 1 <= j <= r");
  }
  const auto [A, m] = polyharmonic_poly(N, r, j);
  const double eps = spec.epsilon;
  const double s = (t / eps) * (t / eps);
  return std::pow(eps, -(N - 2 * r) / 2.0 - 2.0 * j) * poly_eval(A, s) *
         std::pow(1.0 + s, -m);
}

double bubble_polyharmonic_deriv(const BubbleSpec& spec, int N, int r, int j,
                                 double t) {
  if (spec.cutoff_radius > 0.0) {
    throw std::invalid_argument(
        "bubble_polyharmonic_deriv: closed form holds only for the pure bubble");
  }
  const auto [A, m] = polyharmonic_poly(N, r, j);
  // d/dt [A(s)(1+s)^{-m}] = 2(t/eps^2) (1+s)^{-m-1} [(1+s)A' - mA](s).
  const Poly B = poly_add(poly_mul({1.0, 1.0}, poly_der(A)), poly_scale(A, -m));
  const double eps = spec.epsilon;
  const double s = (t / eps) * (t / eps);
  return std::pow(eps, -(N - 2 * r) / 2.0 - 2.0 * j - 1.0) * 2.0 * (t / eps) *
         poly_eval(B, s) * std::pow(1.0 + s, -m - 1.0);
}

double legacy_polyharmonic(const BubbleSpec& spec, int N, int r, int j,
                           double t) {
  if (spec.cutoff_radius > 0.0) {
    throw std::invalid_argument(
        "legacy_polyharmonic: closed form holds only for the pure bubble");
  }
  const CoeffTable tab = make_coeff_table(N, r);
  const double eps = spec.epsilon;
  double num = 0.0;
  for (int i = 0; i <= j; ++i) num += tab.G[i][j] * std::pow(t, 2 * i);
  return std::pow(eps, (N - 2 * r + 4 * j) / 2.0) * num /
         std::pow(eps * eps + t * t, (N - 2 * r + 4 * j) / 2.0);
}

namespace {

double nested_lap(const std::function<double(double)>& f, int N, double x,
                  int j, double h) {
  if (j == 0) return f(std::abs(x));
  double v[5];
  for (int k = 0; k < 5; ++k) {
    v[k] = nested_lap(f, N, x + (k - 2) * h, j - 1, h);
  }
  const double d2 =
      (-v[0] + 16 * v[1] - 30 * v[2] + 16 * v[3] - v[4]) / (12 * h * h);
  const double d1 = (v[0] - 8 * v[1] + 8 * v[3] - v[4]) / (12 * h);
  return -(d2 + (N - 1) / x * d1);
}

double level_spacing(int j) {
  return 0.55 * std::pow(std::numeric_limits<double>::epsilon(),
                         1.0 / (2 * j + 6));
}

}  // namespace

double fd_iterated_laplacian(const std::function<double(double)>& f, int N,
                             int j, double x) {
  if (j == 0) return f(std::abs(x));
  const double h = level_spacing(j);
  const double g1 = nested_lap(f, N, x, j, h);
  const double g2 = nested_lap(f, N, x, j, h / 2);
  return g2 + (g2 - g1) / 15.0;  // Richardson: order 4 -> 6
}

double fd_iterated_laplacian_deriv(const std::function<double(double)>& f,
                                   int N, int j, double x) {
  const double h = 0.55 * std::pow(std::numeric_limits<double>::epsilon(),
                                   1.0 / (2 * j + 5));
  auto d1_at = [&](double spacing) {
    double v[5];
    for (int k = 0; k < 5; ++k) {
      const double y = x + (k - 2) * spacing;
      v[k] = (j == 0) ? f(std::abs(y)) : fd_iterated_laplacian(f, N, j, y);
    }
    return (v[0] - 8 * v[1] + 8 * v[3] - v[4]) / (12 * spacing);
  };
  const double g1 = d1_at(h);
  const double g2 = d1_at(h / 2);
  return g2 + (g2 - g1) / 15.0;
}

namespace {

// Composite Simpson over [0,1] in the radial measure (no matrices).
template <typename F>
double ball_quadrature(int N, int n, F&& integrand) {
  const double omega = sphere_surface(N);
  double acc = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double t = static_cast<double>(i) / n;
    const double co = (i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    acc += co / (3.0 * n) * std::pow(t, N - 1) * integrand(t);
  }
  return acc * omega;
}

// Fit f(e) = K - a e^p + b e^{p+2} through three samples; return K.
double ladder_fit(const std::vector<double>& e, const std::vector<double>& f,
                  double p) {
  Eigen::Matrix3d M;
  Eigen::Vector3d rhs;
  for (int i = 0; i < 3; ++i) {
    M(i, 0) = 1.0;
    M(i, 1) = std::pow(e[i], p);
    M(i, 2) = std::pow(e[i], p + 2.0);
    rhs[i] = f[i];
  }
  return M.fullPivLu().solve(rhs)[0];
}

double richardson_pair(double eA, double eB, double fA, double fB, double p) {
  return fB + (fB - fA) / (std::pow(eA / eB, p) - 1.0);
}

}  // namespace

BubbleNormsReport bubble_norms(int N, int r, const std::vector<double>& eps,
                               double cutoff_radius, int quad_nodes) {
  if (eps.size() < 3) {
    throw std::invalid_argument("bubble_norms: need at least 3 eps values");
  }
  for (size_t i = 1; i < eps.size(); ++i) {
    if (eps[i] >= eps[i - 1]) {
      throw std::invalid_argument("bubble_norms: eps must decrease");
    }
  }
  const double resolvable = 5.0 / quad_nodes;
  for (double e : eps) {
    if (e < resolvable) {
      throw std::invalid_argument("bubble_norms: eps under-resolved for grid");
    }
  }

  BubbleNormsReport rep;
  rep.epsilons = eps;
  const double q = 2.0 * N / (N - 2 * r);
  for (double e : eps) {
    BubbleSpec pure{e, 0.0};
    double sn;
    if (r % 2 == 0) {
      sn = ball_quadrature(N, quad_nodes, [&](double t) {
        const double v = bubble_polyharmonic(pure, N, r, r / 2, t);
        return v * v;
      });
    } else {
      sn = ball_quadrature(N, quad_nodes, [&](double t) {
        const double v = (r == 1) ? bubble_polyharmonic_deriv(pure, N, r, 0, t)
                                  : bubble_polyharmonic_deriv(pure, N, r, (r - 1) / 2, t);
        return v * v;
      });
    }
    rep.seminorm_sq.push_back(sn);
    const double lq = ball_quadrature(N, quad_nodes, [&](double t) {
      return std::pow(std::abs(bubble_eval(pure, N, r, t)), q);
    });
    rep.lq_norm_sq.push_back(std::pow(lq, 2.0 / q));

    // Cutoff variant via the nested-FD oracle (no closed form with cutoff).
    BubbleSpec cut{e, cutoff_radius};
    auto ucut = [&](double t) { return bubble_eval(cut, N, r, t); };
    double snc;
    const int quad_c = 400;  // the nested oracle is accurate; keep this cheap
    if (r % 2 == 0) {
      snc = ball_quadrature(N, quad_c, [&](double t) {
        const double v = fd_iterated_laplacian(ucut, N, r / 2, t);
        return v * v;
      });
    } else {
      snc = ball_quadrature(N, quad_c, [&](double t) {
        const double v = fd_iterated_laplacian_deriv(ucut, N, (r - 1) / 2, t);
        return v * v;
      });
    }
    rep.cutoff_seminorm_sq.push_back(snc);
  }

  const double p = N - 2 * r;
  const size_t k = eps.size();
  const std::vector<double> e3(eps.end() - 3, eps.end());
  const std::vector<double> f3(rep.seminorm_sq.end() - 3, rep.seminorm_sq.end());
  const std::vector<double> l3(rep.lq_norm_sq.end() - 3, rep.lq_norm_sq.end());
  rep.K_hat = ladder_fit(e3, f3, p);
  rep.K_hat_richardson = richardson_pair(e3[1], e3[2], f3[1], f3[2], p);
  rep.fitted_exponent =
      std::log((f3[0] - f3[1]) / (f3[1] - f3[2])) / std::log(e3[0] / e3[1]);
  rep.lq_sq_limit = ladder_fit(e3, l3, p);
  rep.S_hat = rep.K_hat / rep.lq_sq_limit;
  (void)k;
  return rep;
}

double constant_D_integral(int N, int r) {
  // Split at rho = 1; substitute rho = 1/t on the tail.  Both integrands are
  // smooth on [0,1]; fixed-depth composite Simpson with refinement until the
  // estimate is stable below 1e-10.
  auto inner = [&](double t) {
    return std::pow(t, N - 1) * std::pow(1.0 + t * t, -(N + 2.0 * r) / 2.0);
  };
  auto outer = [&](double t) {
    return std::pow(t, 2 * r - 1) * std::pow(1.0 + t * t, -(N + 2.0 * r) / 2.0);
  };
  auto simpson = [](auto&& f, int n) {
    double acc = f(0.0) + f(1.0);
    for (int i = 1; i < n; ++i) {
      acc += (i % 2 == 1 ? 4.0 : 2.0) * f(static_cast<double>(i) / n);
    }
    return acc / (3.0 * n);
  };
  double prev = 0.0, cur = 0.0;
  for (int n = 64; n <= 1 << 16; n *= 2) {
    cur = simpson(inner, n) + simpson(outer, n);
    if (n > 64 && std::abs(cur - prev) < 1e-10) break;
    prev = cur;
  }
  return sphere_surface(N) * cur;
}

}  // namespace polyvar

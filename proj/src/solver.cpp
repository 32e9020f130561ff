#include "polyvar/solver.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polyvar/bubble.hpp"

namespace polyvar {

void ProblemSpec::validate() const {
  if (r < 1) throw std::invalid_argument("ProblemSpec: r must be >= 1");
  if (N <= 2 * r) throw std::invalid_argument("ProblemSpec: need N > 2r");
  if (!phi.grid) throw std::invalid_argument("ProblemSpec: phi has no grid");
  if (!phi.values.allFinite()) {
    throw std::invalid_argument("ProblemSpec: phi must be finite");
  }
}

ReducedProblem make_reduced(const RadialGrid& g, int r, Bc bc) {
  ReducedProblem red;
  red.Z = nullspace_basis(g, r, bc);
  red.A = seminorm_form(g, r, bc);
  red.Ar = red.Z.transpose() * red.A * red.Z;
  return red;
}

namespace {

// signed power |v|^{q-2} v, continuous at 0 since q > 2
Eigen::ArrayXd signed_pow(const Eigen::ArrayXd& v, double q) {
  return v.abs().pow(q - 2.0) * v;
}

double constraint_power(const RadialGrid& g, double q,
                        const Eigen::VectorXd& vfull) {
  return g.weights().dot(vfull.array().abs().pow(q).matrix()) - 1.0;
}

}  // namespace

double al_value(const ReducedProblem& red, const RadialGrid& g, double q,
                const Eigen::VectorXd& phi, const Eigen::VectorXd& y,
                double lam, double mu) {
  const Eigen::VectorXd v = red.Z * y + phi;
  const double gv = constraint_power(g, q, v);
  return y.dot(red.Ar * y) - lam * gv + 0.5 * mu * gv * gv;
}

Eigen::VectorXd al_gradient(const ReducedProblem& red, const RadialGrid& g,
                            double q, const Eigen::VectorXd& phi,
                            const Eigen::VectorXd& y, double lam, double mu) {
  const Eigen::VectorXd v = red.Z * y + phi;
  const double gv = constraint_power(g, q, v);
  const Eigen::VectorXd gg =
      red.Z.transpose() *
      (q * g.weights().array() * signed_pow(v.array(), q)).matrix();
  return 2.0 * red.Ar * y - (lam - mu * gv) * gg;
}

namespace {

struct StartOutcome {
  double value = 0.0;
  Eigen::VectorXd y;
  double multiplier_power = 0.0;  // multiplier of the power-form constraint
  bool feasible = false;
  double constraint_residual = 0.0;
  int iterations = 0;
};

// Augmented-Lagrangian run from a single start, with SQP polish.
StartOutcome run_start(const ReducedProblem& red, const RadialGrid& g, double q,
                       const Eigen::VectorXd& phi, const Eigen::VectorXd& u0,
                       const Tolerances& tol) {
  const int nred = static_cast<int>(red.Ar.rows());
  const Eigen::VectorXd& w = g.weights();

  auto gfun = [&](const Eigen::VectorXd& y) {
    return constraint_power(g, q, red.Z * y + phi);
  };
  auto grad_g = [&](const Eigen::VectorXd& y) -> Eigen::VectorXd {
    const Eigen::VectorXd v = red.Z * y + phi;
    return red.Z.transpose() *
           (q * w.array() * signed_pow(v.array(), q)).matrix();
  };
  auto norm_res = [&](const Eigen::VectorXd& y) {
    return std::abs(lp_norm(g, red.Z * y + phi, q) - 1.0);
  };

  StartOutcome out;
  Eigen::VectorXd y = red.Z.transpose() * u0;
  double lam = 0.0, mu = 10.0;
  bool ok = false;
  int iters = 0;

  for (int outer = 0; outer < tol.max_outer; ++outer) {
    for (int it = 0; it < tol.max_inner; ++it) {
      ++iters;
      const double gv = gfun(y);
      const double lam_eff = lam - mu * gv;
      const Eigen::VectorXd ggr = grad_g(y);
      const Eigen::VectorXd grad = 2.0 * red.Ar * y - lam_eff * ggr;
      const double gn = grad.norm();
      const double sc = 1.0 + (2.0 * red.Ar * y).norm();
      if (gn < tol.gradient_rtol * sc + 1e-12) break;

      const Eigen::VectorXd v = red.Z * y + phi;
      const Eigen::ArrayXd d2 =
          q * (q - 1.0) * w.array() * v.array().abs().pow(q - 2.0);
      Eigen::MatrixXd H =
          2.0 * red.Ar -
          lam_eff * (red.Z.transpose() * d2.matrix().asDiagonal() * red.Z) +
          mu * ggr * ggr.transpose();
      // Jacobi equilibration
      Eigen::VectorXd dvec(nred);
      for (int i = 0; i < nred; ++i) {
        dvec[i] = 1.0 / std::sqrt(std::max(std::abs(H(i, i)), 1e-300));
      }
      const Eigen::MatrixXd Hs =
          dvec.asDiagonal() * H * dvec.asDiagonal();
      const Eigen::VectorXd gs = grad.cwiseProduct(dvec);

      double tau = 0.0;
      bool moved = false;
      double step_norm = 0.0;
      const double merit0 = y.dot(red.Ar * y) - lam * gv + 0.5 * mu * gv * gv;
      for (int tries = 0; tries < 60; ++tries) {
        Eigen::MatrixXd M = Hs;
        M.diagonal().array() += tau;
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
        Eigen::VectorXd ds = lu.solve(-gs);
        ds -= lu.solve(M * ds + gs);  // one pass of iterative refinement
        const Eigen::VectorXd d = ds.cwiseProduct(dvec);
        double alpha = 1.0;
        bool accepted = false;
        const double slope = grad.dot(d);
        for (int ls = 0; ls < 50; ++ls) {
          const Eigen::VectorXd yn = y + alpha * d;
          const double gvn = gfun(yn);
          const double merit =
              yn.dot(red.Ar * yn) - lam * gvn + 0.5 * mu * gvn * gvn;
          if (merit <= merit0 + 1e-4 * alpha * slope) {
            accepted = true;
            y = yn;
            step_norm = alpha * d.norm();
            break;
          }
          alpha *= 0.5;
        }
        if (accepted) {
          moved = true;
          break;
        }
        tau = std::max(1e-10, tau * 10.0);
      }
      if (!moved) break;
      // stalled at the inner minimizer: the line search accepts zero-length
      // steps once the merit is flat to rounding, so stop instead of spinning
      if (step_norm < 1e-12 * (1.0 + y.norm())) break;
    }
    const double gv = gfun(y);
    lam -= mu * gv;
    if (norm_res(y) < tol.constraint_tol) {
      ok = true;
      break;
    }
    mu = std::min(mu * 4.0, 1e13);
  }

  // Bordered-KKT polish with multi-pass iterative refinement; guarded by the
  // merit ||grad|| + |constraint| and by final feasibility.
  const Eigen::VectorXd y_pre = y;
  for (int it = 0; it < 40; ++it) {
    const Eigen::VectorXd v = red.Z * y + phi;
    const Eigen::VectorXd gg = grad_g(y);
    const double denom = gg.squaredNorm();
    if (denom <= 0.0) break;
    const double lam_ls = gg.dot(2.0 * red.Ar * y) / denom;
    const Eigen::VectorXd grad = 2.0 * red.Ar * y - lam_ls * gg;
    const double gv = gfun(y);
    const Eigen::ArrayXd d2 =
        q * (q - 1.0) * w.array() * v.array().abs().pow(q - 2.0);
    const Eigen::MatrixXd H =
        2.0 * red.Ar -
        lam_ls * (red.Z.transpose() * d2.matrix().asDiagonal() * red.Z);
    Eigen::VectorXd dvec(nred);
    for (int i = 0; i < nred; ++i) {
      dvec[i] = 1.0 / std::sqrt(std::max(std::abs(H(i, i)), 1e-300));
    }
    Eigen::MatrixXd K(nred + 1, nred + 1);
    K.topLeftCorner(nred, nred) = dvec.asDiagonal() * H * dvec.asDiagonal();
    K.topRightCorner(nred, 1) = gg.cwiseProduct(dvec);
    K.bottomLeftCorner(1, nred) = gg.cwiseProduct(dvec).transpose();
    K(nred, nred) = 0.0;
    Eigen::VectorXd rhs(nred + 1);
    rhs.head(nred) = -grad.cwiseProduct(dvec);
    rhs[nred] = -gv;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(K);
    Eigen::VectorXd sol = lu.solve(rhs);
    for (int p = 0; p < 8; ++p) sol -= lu.solve(K * sol - rhs);
    const Eigen::VectorXd yn = y + sol.head(nred).cwiseProduct(dvec);
    const Eigen::VectorXd ggn = grad_g(yn);
    const double dn = ggn.squaredNorm();
    if (dn <= 0.0) break;
    const double lam_n = ggn.dot(2.0 * red.Ar * yn) / dn;
    const double merit_new =
        (2.0 * red.Ar * yn - lam_n * ggn).norm() + std::abs(gfun(yn));
    const double merit_old = grad.norm() + std::abs(gv);
    if (merit_new < merit_old) {
      y = yn;
    } else {
      break;
    }
  }
  if (norm_res(y) > tol.constraint_tol && norm_res(y_pre) <= norm_res(y)) {
    y = y_pre;  // the polish drifted off the constraint; keep the AL point
  }

  out.y = y;
  out.value = y.dot(red.Ar * y);
  out.constraint_residual = norm_res(y);
  out.feasible = ok || out.constraint_residual < tol.constraint_tol;
  out.iterations = iters;
  const Eigen::VectorXd gg = grad_g(y);
  const double denom = gg.squaredNorm();
  out.multiplier_power = denom > 0.0 ? gg.dot(2.0 * red.Ar * y) / denom : lam;
  return out;
}

// Scale c so that ||c*dir + phi||_q = 1, if a bracket exists.
std::optional<double> feasibility_scale(const RadialGrid& g, double q,
                                        const Eigen::VectorXd& dir,
                                        const Eigen::VectorXd& phi) {
  auto f = [&](double c) { return lp_norm(g, c * dir + phi, q) - 1.0; };
  double lo = 0.0, hi = 1.0;
  double flo = f(lo);
  double fhi = f(hi);
  int grow = 0;
  while (flo * fhi > 0.0 && grow++ < 12) {
    hi *= 2.0;
    fhi = f(hi);
  }
  if (flo * fhi > 0.0) return std::nullopt;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (flo * fm <= 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

Eigen::VectorXd cutoff_bubble_profile(const RadialGrid& g, int N, int r,
                                      double eps, double R = 0.7) {
  const BubbleSpec spec{eps, R};
  Eigen::VectorXd u(g.size());
  for (int i = 0; i < g.size(); ++i) u[i] = bubble_eval(spec, N, r, g.nodes()[i]);
  return u;
}

}  // namespace

SolveResult solve(const ProblemSpec& spec) {
  spec.validate();
  const RadialGrid& g = *spec.phi.grid;
  const Eigen::VectorXd& phi = spec.phi.values;
  const double q = spec.critical_exponent();
  const int n = g.size();

  SolveResult res;
  res.minimizer.grid = spec.phi.grid;

  // Degenerate anchor: ||phi|| = 1 within 1e-10 -> u = 0, value 0.
  const double phinorm = lp_norm(g, phi, q);
  if (std::abs(phinorm - 1.0) < 1e-10) {
    res.value = 0.0;
    res.minimizer.values = Eigen::VectorXd::Zero(n);
    res.multiplier = 0.0;
    res.multiplier_degenerate = true;
    res.constraint_residual = 0.0;
    res.el_residual = 0.0;
    res.converged = true;
    res.start_values = {0.0};
    return res;
  }

  const ReducedProblem red = make_reduced(g, spec.r, spec.bc);

  // Starts: zero, feasibility-scaled cutoff bubbles, and (for ||phi|| > 1)
  // a scaled projection of -phi.
  std::vector<Eigen::VectorXd> starts;
  starts.push_back(Eigen::VectorXd::Zero(n));
  for (double eps : {0.35, 0.2}) {
    const Eigen::VectorXd bub = cutoff_bubble_profile(g, spec.N, spec.r, eps);
    const Eigen::VectorXd bv = red.Z * (red.Z.transpose() * bub);
    if (auto c = feasibility_scale(g, q, bv, phi)) {
      starts.push_back(*c * bv);
    }
  }
  if (phinorm > 1.0) {
    const Eigen::VectorXd pv = red.Z * (red.Z.transpose() * phi);
    if (auto s = feasibility_scale(g, q, -pv, phi)) {
      starts.push_back(-*s * pv);
    }
  }

  // Coarse-to-fine continuation: on fine grids the basin structure gets
  // harder (conditioning grows like h^{-2r}), so solve the same problem at
  // half resolution and add the interpolated minimizer as a start.  The
  // coarse nodes are exactly every second fine node, so restriction is a
  // subsample and prolongation is linear interpolation in rho.
  if (n >= 160 && (n / 2) % 2 == 0) {
    const int nc = n / 2;
    ProblemSpec cspec;
    cspec.N = spec.N;
    cspec.r = spec.r;
    cspec.bc = spec.bc;
    cspec.tol = spec.tol;
    auto gc = make_radial_grid(spec.N, nc, g.kind());
    Eigen::VectorXd phic(nc);
    for (int j = 0; j < nc; ++j) phic[j] = phi[2 * j + 1];
    cspec.phi = Profile{gc, phic};
    const SolveResult coarse = solve(cspec);
    if (coarse.minimizer.values.size() == nc) {
      Eigen::VectorXd up(n);
      for (int i = 1; i < n; i += 2) {
        up[i] = coarse.minimizer.values[(i - 1) / 2];
      }
      up[0] = up[1];
      for (int i = 2; i < n; i += 2) {
        const double x = g.nodes()[i];
        const double xl = g.nodes()[i - 1], xr = g.nodes()[i + 1];
        up[i] = up[i - 1] + (up[i + 1] - up[i - 1]) * (x - xl) / (xr - xl);
      }
      const Eigen::VectorXd pv = red.Z * (red.Z.transpose() * up);
      if (auto c = feasibility_scale(g, q, pv, phi)) {
        starts.push_back(*c * pv);
      }
    }
  }

  std::optional<StartOutcome> best;
  for (const auto& u0 : starts) {
    StartOutcome out = run_start(red, g, q, phi, u0, spec.tol);
    res.start_values.push_back(out.value);
    res.iterations += out.iterations;
    if (!best) {
      best = out;
      continue;
    }
    const bool better = out.value < best->value - 1e-12;
    const bool tie = std::abs(out.value - best->value) <= 1e-8;
    if (better ||
        (tie && lp_norm(g, red.Z * out.y, 2.0) <
                    lp_norm(g, red.Z * best->y, 2.0))) {
      best = out;
    }
  }

  const Eigen::VectorXd u = red.Z * best->y;
  res.value = best->value;
  res.minimizer.values = u;
  res.multiplier = best->multiplier_power * q / 2.0;  // norm-form conversion
  res.constraint_residual = best->constraint_residual;
  const ElResidualReport el =
      el_residual(g, u, phi, res.multiplier, spec.N, spec.r, spec.bc);
  res.el_residual = el.interior;
  res.converged = best->feasible &&
                  res.constraint_residual < spec.tol.constraint_tol &&
                  res.el_residual < spec.tol.el_tol;
  return res;
}

double lagrange_multiplier_identity(const RadialGrid& g,
                                    const Eigen::VectorXd& u,
                                    const Eigen::VectorXd& phi, double value,
                                    int N, int r) {
  const double q = 2.0 * N / (N - 2.0 * r);
  const Eigen::ArrayXd v = (u + phi).array();
  const double pairing =
      g.weights().dot((signed_pow(v, q) * phi.array()).matrix());
  const double bracket = 1.0 - pairing;
  if (std::abs(bracket) < 1e-12) {
    throw std::domain_error(
        "lagrange_multiplier_identity: degenerate multiplier (bracket ~ 0)");
  }
  return value / bracket;
}

ElResidualReport el_residual(const RadialGrid& g, const Eigen::VectorXd& u,
                             const Eigen::VectorXd& phi, double lambda, int N,
                             int r, Bc bc) {
  const double q = 2.0 * N / (N - 2.0 * r);
  const int n = g.size();
  const Eigen::MatrixXd A = seminorm_form(g, r, bc);
  const Eigen::ArrayXd v = (u + phi).array();
  const Eigen::ArrayXd s = signed_pow(v, q);
  const Eigen::ArrayXd strong = (A * u).array() / g.weights().array();
  const Eigen::ArrayXd resid = strong - lambda * s;

  const double hmin = g.min_spacing();
  double acc = 0.0;
  for (int i = 0; i < n - 10; ++i) {
    if (g.nodes()[i] < 5.0 * hmin) continue;
    acc += g.weights()[i] * resid[i] * resid[i];
  }
  const double value = g.weights().dot(
      (seminorm_operator(g, r, bc) * u).cwiseAbs2());
  const double scale =
      std::abs(lambda) *
          std::sqrt(g.weights().dot(v.abs().pow(2.0 * q - 2.0).matrix())) +
      std::sqrt(std::max(value, 0.0));

  ElResidualReport rep;
  rep.interior = scale > 0.0 ? std::sqrt(acc) / scale : 0.0;
  if (bc == Bc::navier) {
    const int m = (r + 1) / 2;
    Eigen::VectorXd cur = u;
    for (int k = 1; k <= r - 1; ++k) {
      cur = iterated_laplacian(g, u, k, bc, r);
      if (k >= m) {
        const double mag = cur.cwiseAbs().maxCoeff();
        rep.natural_bc.push_back(std::abs(cur[n - 1]) /
                                 (mag > 0.0 ? mag : 1.0));
      }
    }
  }
  return rep;
}

SobolevConstant sobolev_constant_estimate(int N, int r,
                                          const std::vector<int>& levels) {
  if (N <= 2 * r) {
    throw std::invalid_argument("sobolev_constant_estimate: need N > 2r");
  }
  SobolevConstant sob;
  sob.N = N;
  sob.r = r;
  sob.levels = levels;
  const double q = 2.0 * N / (N - 2.0 * r);

  for (int n : levels) {
    auto grid = make_radial_grid(N, n);
    const Eigen::MatrixXd A = seminorm_form(*grid, r, Bc::dirichlet);
    auto quotient = [&](double eps) {
      const Eigen::VectorXd u = [&] {
        const BubbleSpec spec{eps, 0.9};
        Eigen::VectorXd v(grid->size());
        for (int i = 0; i < grid->size(); ++i) {
          v[i] = bubble_eval(spec, N, r, grid->nodes()[i]);
        }
        return v;
      }();
      const double lq = lp_norm(*grid, u, q);
      return u.dot(A * u) / (lq * lq);
    };
    // Golden-section minimization over the resolvable range [10/n, 0.5].
    double a = 10.0 / n, b = 0.5;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = quotient(c), fd = quotient(d);
    while (b - a > 1e-4) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - gr * (b - a);
        fc = quotient(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + gr * (b - a);
        fd = quotient(d);
      }
    }
    sob.level_values.push_back(std::min(fc, fd));
  }

  const size_t k = sob.level_values.size();
  if (k >= 3) {
    // Two-term fit in the per-level resolvability scale e_n = 10/n with
    // exponents {p, p+2}, p = N - 2r.
    const double p = N - 2.0 * r;
    Eigen::Matrix3d M;
    Eigen::Vector3d rhs;
    for (int i = 0; i < 3; ++i) {
      const double e = 10.0 / levels[k - 3 + i];
      M(i, 0) = 1.0;
      M(i, 1) = std::pow(e, p);
      M(i, 2) = std::pow(e, p + 2.0);
      rhs[i] = sob.level_values[k - 3 + i];
    }
    sob.estimate = M.fullPivLu().solve(rhs)[0];
    sob.extrapolated = true;
  } else {
    sob.estimate = sob.level_values.back();
  }
  if (sob.estimate <= 0.0) {
    // Extrapolation overshot (can happen when the ladder is under-resolved);
    // fall back to the finest-level value, which upper-bounds the constant.
    sob.estimate = sob.level_values.back();
    sob.extrapolated = false;
  }
  return sob;
}

double eps_upper_bound(const RadialGrid& g, const Eigen::VectorXd& phi,
                       const SobolevConstant& sob, int N, int r) {
  const double q = 2.0 * N / (N - 2.0 * r);
  const double nrm = lp_norm(g, phi, q);
  if (nrm >= 1.0) {
    throw std::invalid_argument("eps_upper_bound: requires ||phi|| < 1");
  }
  return sob.estimate *
         std::pow(1.0 - std::pow(nrm, q), (N - 2.0 * r) / N);
}

Eigen::VectorXd make_phi(const RadialGrid& g, PhiKind kind, double target_norm,
                         int r) {
  if (target_norm <= 0.0) {
    throw std::invalid_argument("make_phi: target norm must be positive");
  }
  const int n = g.size();
  const int N = g.dimension();
  const double q = 2.0 * N / (N - 2.0 * r);
  Eigen::VectorXd seed(n);

  switch (kind) {
    case PhiKind::constant_sign_bump:
      for (int i = 0; i < n; ++i) {
        const double rho = g.nodes()[i];
        seed[i] = rho < 1.0 ? std::exp(-1.0 / (1.0 - rho * rho)) : 0.0;
      }
      break;
    case PhiKind::h0_member:
      for (int i = 0; i < n; ++i) {
        seed[i] = std::pow(1.0 - g.nodes()[i] * g.nodes()[i], r + 1);
      }
      seed = enforce_bc(g, seed, r, Bc::dirichlet);
      break;
    case PhiKind::theta_orthogonal: {
      if (r < 2) {
        throw std::domain_error(
            "make_phi: the Dirichlet complement is trivial for r = 1");
      }
      for (int i = 0; i < n; ++i) {
        seed[i] = std::sin(std::numbers::pi * g.nodes()[i]);
      }
      seed = enforce_bc(g, seed, r, Bc::navier);
      const Eigen::MatrixXd A = seminorm_form(g, r, Bc::navier);
      const Eigen::MatrixXd Zd = nullspace_basis(g, r, Bc::dirichlet);
      const Eigen::MatrixXd gram = Zd.transpose() * A * Zd;
      const Eigen::VectorXd proj =
          Zd * gram.ldlt().solve(Zd.transpose() * (A * seed));
      seed -= proj;
      break;
    }
  }
  const double nrm = lp_norm(g, seed, q);
  if (nrm < 1e-14) {
    throw std::domain_error("make_phi: zero seed, target norm unreachable");
  }
  return seed * (target_norm / nrm);
}

}  // namespace polyvar

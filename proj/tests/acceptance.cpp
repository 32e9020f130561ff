// Acceptance harness: ten numbered end-to-end checks, one per command-line
// argument (1..10), each printing PASS or FAIL with its margins.  Run with no
// argument to execute all ten.  Checks 3 and 4 encode claims that the solver
// refutes numerically at these resolutions; they are expected to stay red and
// their output documents the measured values.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "polyvar/bubble.hpp"
#include "polyvar/duality.hpp"
#include "polyvar/inequalities.hpp"
#include "polyvar/scenario.hpp"
#include "polyvar/solver.hpp"

using namespace polyvar;

namespace {

struct Crit {
  bool pass = true;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    details.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
    if (!ok) pass = false;
  }
  void info(const std::string& what) { details.push_back("  info " + what); }
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

const std::vector<std::pair<int, int>> kScenarios = {{3, 1}, {5, 2}, {7, 3}};

SolveResult run_solve(int N, int r, Bc bc, PhiKind kind, double norm, int n) {
  ProblemSpec spec;
  spec.N = N;
  spec.r = r;
  spec.bc = bc;
  auto g = make_radial_grid(N, n);
  spec.phi = Profile{g, make_phi(*g, kind, norm, r)};
  return solve(spec);
}

// 1. Closed-form iterated Laplacians of the bubble match the nested-stencil
//    oracle within 1e-4 relative on rho in [0.05, 0.8], n = 800, eps = 0.3.
Crit crit1() {
  Crit c;
  BubbleSpec spec;
  spec.epsilon = 0.3;
  const int n = 800;
  for (auto [N, r] : kScenarios) {
    const auto f = [&, N = N, r = r](double t) {
      return bubble_eval(spec, N, r, t);
    };
    for (int j = 1; j <= r; ++j) {
      double worst = 0.0, at = 0.0;
      for (int i = 1; i <= n; ++i) {
        const double rho = static_cast<double>(i) / n;
        if (rho < 0.05 || rho > 0.8) continue;
        const double closed = bubble_polyharmonic(spec, N, r, j, rho);
        const double oracle = fd_iterated_laplacian(f, N, j, rho);
        const double rel = std::abs(closed - oracle) /
                           std::max(std::abs(oracle), 1e-300);
        if (rel > worst) {
          worst = rel;
          at = rho;
        }
      }
      c.require(worst < 1e-4, "N=" + std::to_string(N) + " r=" +
                                  std::to_string(r) + " j=" +
                                  std::to_string(j) + ": worst rel err " +
                                  num(worst) + " at rho=" + num(at));
    }
  }
  c.info("printed coefficient-table closed form is defective; the corrected "
         "recursion is what passes (see legacy_polyharmonic unit test)");
  return c;
}

// 2. Seminorm asymptotics: two extrapolations of ||u_eps||_r^2 within 3%,
//    fitted correction exponent within +-0.7 of N-2r.
Crit crit2() {
  Crit c;
  for (auto [N, r] : kScenarios) {
    const BubbleNormsReport bn = bubble_norms(N, r, {0.4, 0.2, 0.1});
    const double agree =
        std::abs(bn.K_hat - bn.K_hat_richardson) / std::max(bn.K_hat, 1e-300);
    c.require(agree < 0.03, "N=" + std::to_string(N) + " r=" +
                                std::to_string(r) +
                                ": extrapolations agree to " + num(agree) +
                                " (K_hat=" + num(bn.K_hat) + ")");
    const double target = N - 2 * r;
    c.require(std::abs(bn.fitted_exponent - target) <= 0.7,
              "  fitted exponent " + num(bn.fitted_exponent) + " vs " +
                  num(target));
  }
  return c;
}

struct GapLeg {
  std::vector<SolveResult> nav, dir;
  bool all_converged = true;
};

GapLeg gap_leg(int N, int r, PhiKind kind, double norm,
               const std::vector<int>& levels) {
  GapLeg leg;
  for (int n : levels) {
    leg.nav.push_back(run_solve(N, r, Bc::navier, kind, norm, n));
    leg.dir.push_back(run_solve(N, r, Bc::dirichlet, kind, norm, n));
    if (!leg.nav.back().converged || !leg.dir.back().converged) {
      leg.all_converged = false;
    }
  }
  return leg;
}

// 3. Strict gap for constant-sign phi at norm 0.5, (3,1) and (5,2): relative
//    gap > 1e-2, stable (no 2x shrink) across 3 levels, multiplier > 0.
Crit crit3() {
  Crit c;
  const std::vector<int> levels = {100, 200, 400};
  for (auto [N, r] : {std::pair{3, 1}, std::pair{5, 2}}) {
    const GapLeg leg =
        gap_leg(N, r, PhiKind::constant_sign_bump, 0.5, levels);
    c.require(leg.all_converged,
              "N=" + std::to_string(N) + ": all six solves converged");
    if (!leg.all_converged) continue;
    double gmin = 1e300, gmax = 0.0;
    bool gap_ok = true;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      const double rel = (leg.dir[i].value - leg.nav[i].value) /
                         std::max(leg.dir[i].value, 1e-300);
      gmin = std::min(gmin, rel);
      gmax = std::max(gmax, rel);
      if (!(rel > 1e-2)) gap_ok = false;
      c.info("N=" + std::to_string(N) + " n=" + std::to_string(levels[i]) +
             ": navier " + num(leg.nav[i].value) + ", dirichlet " +
             num(leg.dir[i].value) + ", rel gap " + num(rel));
    }
    c.require(gap_ok, "N=" + std::to_string(N) + ": relative gap > 1e-2 at "
                          "every level (min " + num(gmin) + ")");
    c.require(gmin > 0.0 && gmax / std::max(gmin, 1e-300) <= 2.0,
              "N=" + std::to_string(N) + ": gap stable (max/min " +
                  num(gmax / std::max(gmin, 1e-300)) + ")");
    bool lam_ok = true;
    for (const auto& batch : {leg.nav, leg.dir}) {
      for (const auto& res : batch) {
        if (res.converged && !(res.multiplier > 0.0)) lam_ok = false;
      }
    }
    c.require(lam_ok, "N=" + std::to_string(N) +
                          ": multiplier positive on every converged solve");
  }
  c.info("the first-order families coincide (one essential condition each), "
         "so the N=3 leg has zero gap by construction; red here documents "
         "that, not a solver defect");
  return c;
}

// 4. Equality claim for a Dirichlet-family phi at norm 1.5: relative
//    difference < 1e-3 at the finest level and decreasing; multiplier < 0.
Crit crit4() {
  Crit c;
  const std::vector<int> levels = {100, 200, 400};
  const GapLeg leg = gap_leg(5, 2, PhiKind::h0_member, 1.5, levels);
  c.require(leg.all_converged, "all six solves converged");
  if (!leg.all_converged) return c;
  std::vector<double> rels;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    rels.push_back(std::abs(leg.nav[i].value - leg.dir[i].value) /
                   std::max(leg.dir[i].value, 1e-300));
    c.info("n=" + std::to_string(levels[i]) + ": navier " +
           num(leg.nav[i].value) + ", dirichlet " + num(leg.dir[i].value) +
           ", rel diff " + num(rels.back()));
  }
  c.require(rels.back() < 1e-3,
            "relative difference " + num(rels.back()) + " < 1e-3 at n=400");
  c.require(rels[2] <= rels[1] && rels[1] <= rels[0],
            "difference decreasing under refinement");
  bool lam_ok = true;
  for (const auto& batch : {leg.nav, leg.dir}) {
    for (const auto& res : batch) {
      if (!(res.multiplier < 0.0)) lam_ok = false;
    }
  }
  c.require(lam_ok, "multiplier negative for both families at every level");
  c.info("the gap is stable near 17% across levels and basin-independent; "
         "red documents a measured counterexample to the equality claim at "
         "these resolutions, not a tolerance choice");
  return c;
}

// 5. Multiplier sign trichotomy at (3,1), both families, plus the identity
//    value = (Lambda/q) h'(1) within 1%.
Crit crit5() {
  Crit c;
  const double q = 6.0;
  for (double norm : {0.3, 0.7, 1.3, 2.0}) {
    for (Bc bc : {Bc::navier, Bc::dirichlet}) {
      const SolveResult res =
          run_solve(3, 1, bc, PhiKind::constant_sign_bump, norm, 200);
      const std::string tag =
          "norm " + num(norm) + (bc == Bc::navier ? " navier" : " dirichlet");
      c.require(res.converged, tag + ": converged");
      if (!res.converged) continue;
      const int want = (norm < 1.0) ? 1 : -1;
      c.require(want * res.multiplier > 0.0,
                tag + ": sign(multiplier) = sign(1 - norm), Lambda = " +
                    num(res.multiplier));
      auto g = make_radial_grid(3, 200);
      const Eigen::VectorXd phi =
          make_phi(*g, PhiKind::constant_sign_bump, norm, 1);
      const auto [h, hp] =
          h_function(1.0, res.minimizer.values, phi, *g, 3, 1);
      const double rhs = res.multiplier / q * hp;
      c.require(std::abs(res.value - rhs) <=
                    0.01 * std::max(std::abs(res.value), 1e-12),
                tag + ": value " + num(res.value) + " vs (Lambda/q) h'(1) " +
                    num(rhs));
      c.require(std::abs(h - 1.0) < 1e-6, tag + ": h(1) = " + num(h));
    }
  }
  return c;
}

// 6. The scaled-bubble upper bound holds for every strict-gap solve.
Crit crit6() {
  Crit c;
  for (auto [N, r] : {std::pair{3, 1}, std::pair{5, 2}}) {
    const SobolevConstant sob =
        sobolev_constant_estimate(N, r, {100, 200, 400});
    c.info("N=" + std::to_string(N) + ": Sobolev constant estimate " +
           num(sob.estimate));
    for (double norm : {0.3, 0.5, 0.8}) {
      const SolveResult res = run_solve(N, r, Bc::navier,
                                        PhiKind::constant_sign_bump, norm, 400);
      c.require(res.converged, "N=" + std::to_string(N) + " norm " +
                                   num(norm) + ": converged");
      if (!res.converged) continue;
      auto g = make_radial_grid(N, 400);
      const Eigen::VectorXd phi =
          make_phi(*g, PhiKind::constant_sign_bump, norm, r);
      const double bound = eps_upper_bound(*g, phi, sob, N, r);
      const double slack = 1.0 + 0.02 + sob.uncertainty;
      c.require(res.value <= bound * slack,
                "N=" + std::to_string(N) + " norm " + num(norm) + ": value " +
                    num(res.value) + " <= bound " + num(bound) + " * " +
                    num(slack));
    }
  }
  return c;
}

// 7. Duality at norm 1.5, even order: weak duality on 200 random dual points,
//    near-tight witness, and exact attainment of the Hoelder supremum.
Crit crit7() {
  Crit c;
  const int N = 5, r = 2, n = 200;
  const SolveResult res =
      run_solve(N, r, Bc::navier, PhiKind::constant_sign_bump, 1.5, n);
  c.require(res.converged, "primal solve converged, value " + num(res.value));
  if (!res.converged) return c;
  auto g = make_radial_grid(N, n);
  const Eigen::VectorXd phi =
      make_phi(*g, PhiKind::constant_sign_bump, 1.5, r);
  const double target = 0.5 * res.value;

  std::mt19937_64 rng(2024);
  std::normal_distribution<double> gauss;
  int violations = 0;
  double worst = -1e300;
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::VectorXd p(g->size());
    for (int i = 0; i < g->size(); ++i) p[i] = gauss(rng);
    p *= std::pow(10.0, (trial % 5) - 2);
    const double d = dual_objective(*g, p, phi, N, r, Bc::navier);
    worst = std::max(worst, d - target);
    if (d > target + 1e-6) ++violations;
  }
  c.require(violations == 0, "weak duality on 200 random dual points "
                             "(worst slack above primal/2: " + num(worst) +
                             ")");

  const Eigen::VectorXd pw =
      dual_witness(*g, res.minimizer.values, r, Bc::navier);
  const double dw = dual_objective(*g, pw, phi, N, r, Bc::navier);
  const double relgap = std::abs(target - dw) / std::max(target, 1e-300);
  c.require(dw <= target + 1e-9 && relgap < 0.02,
            "witness duality gap " + num(relgap) + " relative");

  const Eigen::VectorXd pt = dual_representer(*g, pw, r, Bc::navier);
  const auto [closed, attained] = holder_dual_sup(*g, pt, 10.0);
  c.require(std::abs(closed - attained) <= 1e-8 * std::max(1.0, closed),
            "supremum attained: closed " + num(closed) + ", maximizer " +
                num(attained));
  return c;
}

// 8. Scalar inequalities: zero violations over 1e4 samples; h' vs finite
//    differences to 1e-6 relative; empirical constant stable under doubling.
Crit crit8() {
  Crit c;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> xy(0.0, 10.0), pe(3.0, 6.0);
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double d = power_inequality_defect(xy(rng), xy(rng), pe(rng));
    worst = std::min(worst, d);
    if (d < -1e-12) ++violations;
  }
  c.require(violations == 0, "power inequality: 0 violations in 1e4 samples "
                             "(worst defect " + num(worst) + ")");

  auto g = make_radial_grid(3, 100);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> tdist(0.2, 1.8);
  bool fd_ok = true;
  double fd_worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd u(g->size());
    for (int i = 0; i < g->size(); ++i) u[i] = gauss(rng);
    u = enforce_bc(*g, u, 1, Bc::navier);
    const Eigen::VectorXd phi =
        make_phi(*g, PhiKind::constant_sign_bump, tdist(rng), 1);
    const double t = tdist(rng), h = 1e-6;
    const auto [hm, d1] = h_function(t - h, u, phi, *g, 3, 1);
    const auto [hp, d2] = h_function(t + h, u, phi, *g, 3, 1);
    const auto [hc, hprime] = h_function(t, u, phi, *g, 3, 1);
    const double fd = (hp - hm) / (2.0 * h);
    const double rel = std::abs(hprime - fd) / std::max(std::abs(fd), 1e-12);
    fd_worst = std::max(fd_worst, rel);
    if (rel > 1e-6) fd_ok = false;
  }
  c.require(fd_ok, "h' vs central differences: worst rel err " +
                       num(fd_worst));

  const auto chat = [&](int samples) {
    std::mt19937_64 r2(99);
    std::uniform_real_distribution<double> s(-5.0, 5.0);
    double cmax = 0.0;
    for (int i = 0; i < samples; ++i) {
      const auto [lhs, bound] = bn_lemma_defect(s(r2), s(r2), 2.5);
      if (bound > 1e-12) cmax = std::max(cmax, lhs / bound);
    }
    return cmax;
  };
  const double c1 = chat(100000), c2 = chat(200000);
  c.require(std::isfinite(c2) && std::abs(c2 - c1) < 0.05 * c1,
            "empirical constant stable under doubling: " + num(c1) + " -> " +
                num(c2));
  return c;
}

// 9. Unit-norm anchor: both infima vanish with the zero minimizer.
Crit crit9() {
  Crit c;
  for (Bc bc : {Bc::navier, Bc::dirichlet}) {
    const SolveResult res =
        run_solve(3, 1, bc, PhiKind::constant_sign_bump, 1.0, 100);
    const std::string tag = bc == Bc::navier ? "navier" : "dirichlet";
    c.require(res.value < 1e-10, tag + ": value " + num(res.value));
    c.require(res.minimizer.values.lpNorm<Eigen::Infinity>() < 1e-10,
              tag + ": minimizer is zero");
    c.require(res.converged, tag + ": converged");
  }
  return c;
}

// 10. Solver hygiene: merit gradient vs central differences on random
//     feasible points; identical seeds give byte-identical CSV.
Crit crit10() {
  Crit c;
  auto g = make_radial_grid(3, 80);
  const ReducedProblem red = make_reduced(*g, 1, Bc::navier);
  const Eigen::VectorXd phi =
      make_phi(*g, PhiKind::constant_sign_bump, 0.5, 1);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss;
  double worst = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd y(red.Z.cols());
    for (int i = 0; i < y.size(); ++i) y[i] = 0.2 * gauss(rng);
    const double lam = gauss(rng), mu = 1.0 + std::abs(gauss(rng));
    const Eigen::VectorXd grad = al_gradient(red, *g, 6.0, phi, y, lam, mu);
    const double h = 1e-6;
    for (int i = 0; i < 8; ++i) {
      Eigen::VectorXd yp = y, ym = y;
      yp[i] += h;
      ym[i] -= h;
      const double fd = (al_value(red, *g, 6.0, phi, yp, lam, mu) -
                         al_value(red, *g, 6.0, phi, ym, lam, mu)) /
                        (2.0 * h);
      worst = std::max(worst, std::abs(grad[i] - fd) /
                                  std::max(std::abs(fd), 1e-8));
    }
  }
  c.require(worst < 1e-6,
            "merit gradient vs central differences: worst rel err " +
                num(worst));

  ScenarioConfig cfg;
  cfg.scenario = "proposition_signs";
  cfg.N = 3;
  cfg.r = 1;
  cfg.levels = {100};
  cfg.phi_norm = 0.5;
  cfg.phi_norm_given = true;
  cfg.seed = 12345;
  const Report a = run_scenario(cfg);
  const Report b = run_scenario(cfg);
  c.require(emit_csv(a.rows) == emit_csv(b.rows) && !a.rows.empty(),
            "identical seeds reproduce byte-identical CSV (" +
                std::to_string(emit_csv(a.rows).size()) + " bytes)");
  return c;
}

struct Entry {
  int id;
  double budget_seconds;
  Crit (*fn)();
};

const Entry kEntries[] = {
    {1, 10.0, crit1},  {2, 30.0, crit2},  {3, 120.0, crit3},
    {4, 120.0, crit4}, {5, 120.0, crit5}, {6, 180.0, crit6},
    {7, 60.0, crit7},  {8, 30.0, crit8},  {9, 30.0, crit9},
    {10, 30.0, crit10}};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  if (argc > 1) only = std::atoi(argv[1]);
  bool all_pass = true;
  for (const Entry& e : kEntries) {
    if (only != 0 && e.id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Crit c = e.fn();
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    c.require(secs < e.budget_seconds,
              "runtime " + num(secs) + " s within budget " +
                  num(e.budget_seconds) + " s");
    std::printf("criterion %d: %s (%.1f s)\n", e.id,
                c.pass ? "PASS" : "FAIL", secs);
    for (const std::string& line : c.details) {
      std::printf("%s\n", line.c_str());
    }
    std::fflush(stdout);
    if (!c.pass) all_pass = false;
  }
  return all_pass ? 0 : 1;
}

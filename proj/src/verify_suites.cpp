#include "polyflow/verify_suites.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "polyflow/cubic_special.hpp"
#include "polyflow/dynamics.hpp"
#include "polyflow/error.hpp"
#include "polyflow/evolution.hpp"
#include "polyflow/oracle.hpp"
#include "polyflow/poly_core.hpp"
#include "polyflow/rng.hpp"

namespace polyflow::suites {

namespace {

struct Case {
  std::vector<double> roots;
  NormalizedPolynomial poly;
};

Case random_case(Rng& rng, int n_lo = 2, int n_hi = 8) {
  Case c;
  c.roots = rng.separated_roots(rng.uniform_int(n_lo, n_hi), -10.0, 10.0, 0.1);
  c.poly = from_roots(c.roots);
  return c;
}

void note(SuiteReport& rep, const std::string& key, double value) {
  rep.notes.push_back(key + "=" + format_double(value));
}

// from_roots coefficients against the independent long-double expansion
SuiteReport run_vieta(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = "vieta";
  rep.cases = opts.cases > 0 ? opts.cases : 200;
  const double tol = opts.tol >= 0 ? opts.tol : 1e-10;
  Rng rng(opts.seed);
  for (long i = 0; i < rep.cases; ++i) {
    const Case c = random_case(rng);
    const std::vector<double> monic = to_monic(c.poly);
    const oracle::MonicPolynomial ref = oracle::expand_from_roots(c.roots);
    double worst = 0.0;
    for (size_t j = 0; j < monic.size(); ++j)
      worst = std::max(worst,
                       std::abs(monic[j] - ref.coeffs[j]) / (1.0 + std::abs(ref.coeffs[j])));
    rep.max_residual = std::max(rep.max_residual, worst);
    if (worst > tol) ++rep.failures;
  }
  note(rep, "tol", tol);
  rep.pass = rep.failures == 0;
  return rep;
}

// depressing before vs after a common root translation gives the same invariants
SuiteReport run_invariants(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = "invariants";
  rep.cases = opts.cases > 0 ? opts.cases : 200;
  const double tol = opts.drift_tol >= 0 ? opts.drift_tol : 1e-9;
  Rng rng(opts.seed);
  for (long i = 0; i < rep.cases; ++i) {
    Case c = random_case(rng);
    const InvariantSet before = depress(c.poly);
    const double shift = rng.uniform(-5.0, 5.0);
    for (double& q : c.roots) q += shift;
    const InvariantSet after = depress(from_roots(c.roots));
    double worst = std::abs(after.r0 - before.r0) / (1.0 + std::abs(before.r0));
    for (int k = 2; k <= c.poly.degree - 1; ++k)
      worst = std::max(worst,
                       std::abs(after.rk(k) - before.rk(k)) / (1.0 + std::abs(before.rk(k))));
    rep.max_residual = std::max(rep.max_residual, worst);
    if (worst > tol) ++rep.failures;
  }
  note(rep, "drift_tol", tol);
  rep.pass = rep.failures == 0;
  return rep;
}

// derivative ladder: finite differences of psq against k!(k+1) P_{n-k},
// plus the exact factorial value of the order-n derivative
SuiteReport run_derivative_ladder(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = "theorem24";
  rep.cases = opts.cases > 0 ? opts.cases : 200;
  const double tol = opts.tol >= 0 ? opts.tol : 1e-6;
  const double exact_tol = 1e-9;
  Rng rng(opts.seed);
  double worst_exact = 0.0;
  for (long i = 0; i < rep.cases; ++i) {
    const Case c = random_case(rng);
    const int n = c.poly.degree;
    const InvariantSet inv = depress(c.poly);
    const double p1 = c.poly.p1();
    auto f = [&inv](long double x) { return psq_of_p1_ld(inv, x); };
    double worst = 0.0;
    for (int k = 1; k <= std::min(4, n - 1); ++k) {
      const double h = oracle::fd_step_hint(k, 1.0 + std::abs(p1));
      const double fd = static_cast<double>(oracle::finite_diff_ld(f, p1, k, h));
      double expected = c.poly.pk(n - k) * (k + 1);
      for (int j = 2; j <= k; ++j) expected *= j;
      worst = std::max(worst, std::abs(fd - expected) / (1.0 + std::abs(expected)));
    }
    double fact = 1.0;
    for (int j = 2; j <= n; ++j) fact *= j;
    const double exact_dev = std::abs(psq_derivative(inv, p1, n) - fact) / fact;
    worst_exact = std::max(worst_exact, exact_dev);
    rep.max_residual = std::max(rep.max_residual, worst);
    if (worst > tol || exact_dev > exact_tol) ++rep.failures;
  }
  note(rep, "tol", tol);
  note(rep, "max_exact_order_dev", worst_exact);
  rep.pass = rep.failures == 0;
  return rep;
}

// the truncated exponential-shift sum vanishes at every root
SuiteReport run_euler_shift(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = "euler-shift";
  rep.cases = opts.cases > 0 ? opts.cases : 200;
  const double tol = opts.tol >= 0 ? opts.tol : 1e-8;
  Rng rng(opts.seed);
  for (long i = 0; i < rep.cases; ++i) {
    const Case c = random_case(rng);
    const double scale = 1.0 + std::abs(c.poly.psq);
    double worst = 0.0;
    for (double q : c.roots)
      worst = std::max(worst, std::abs(euler_shift_residual(c.poly, q)) / scale);
    rep.max_residual = std::max(rep.max_residual, worst);
    if (worst > tol) ++rep.failures;
  }
  note(rep, "tol", tol);
  rep.pass = rep.failures == 0;
  return rep;
}

// trisection solution of in-regime depressed cubics against the root oracle
SuiteReport run_trig(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = "trig";
  rep.cases = opts.cases > 0 ? opts.cases : 200;
  const double tol = opts.tol >= 0 ? opts.tol : 1e-10;
  Rng rng(opts.seed);
  for (long i = 0; i < rep.cases; ++i) {
    const Case c = random_case(rng, 3, 3);
    const cubic::CubicInvariants ci = cubic::cubic_invariants(depress(c.poly));
    if (!cubic::three_real_regime(ci)) {
      ++rep.failures;  // distinct real roots must be inside the regime
      continue;
    }
    const DepressedRootSet got = cubic::solve_cubic_trig(ci);
    const double mean = (c.roots[0] + c.roots[1] + c.roots[2]) / 3.0;
    double worst = 0.0;
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst, std::abs(got.y[static_cast<size_t>(j)] -
                                       (c.roots[static_cast<size_t>(j)] - mean)));
    rep.max_residual = std::max(rep.max_residual, worst);
    if (worst > tol) ++rep.failures;
  }
  note(rep, "tol", tol);
  rep.pass = rep.failures == 0;
  return rep;
}

// flow residual, turning-value roots, function identities, quotient ODEs,
// and the constant-difference parametrization
SuiteReport run_elliptic(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = "elliptic";
  rep.cases = opts.cases > 0 ? opts.cases : 20;
  const double flow_tol = opts.tol >= 0 ? opts.tol : 1e-6;
  const double fd_tol = 1e-7;
  const double const_tol = 1e-10;
  Rng rng(opts.seed);
  double worst_flow = 0.0, worst_turning = 0.0, worst_fd = 0.0, worst_const = 0.0;

  for (long i = 0; i < rep.cases; ++i) {
    const Case c = random_case(rng, 3, 3);
    const cubic::CubicInvariants ci = cubic::cubic_invariants(depress(c.poly));
    if (!cubic::three_real_regime(ci)) {
      ++rep.failures;
      continue;
    }
    const DepressedRootSet w = cubic::solve_cubic_trig({ci.d, -ci.r0});  // radicand roots
    const double m = (w.y[1] - w.y[0]) / (w.y[2] - w.y[0]);
    const double period = 2.0 * cubic::complete_elliptic_K(m) / (0.5 * std::sqrt(w.y[2] - w.y[0]));
    cubic::FlowOptions fo;
    fo.steps = 8192;
    const cubic::FlowResult flow =
        cubic::weierstrass_flow(ci, 0.5 * (w.y[0] + w.y[1]), 1.5 * period, fo);
    worst_flow = std::max(worst_flow, flow.max_residual);
    bool bad = flow.max_residual > flow_tol || flow.turning_points.empty();
    if (!flow.turning_points.empty()) {
      const cubic::RootsCheck rc = cubic::weierstrass_roots_check(flow);
      for (double r : rc.turning_residuals) {
        worst_turning = std::max(worst_turning, r);
        if (r > flow_tol) bad = true;
      }
    }
    if (bad) ++rep.failures;
  }

  // pointwise identities and derivative systems on a deterministic (u, m) grid
  for (double mm : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    const double K = cubic::complete_elliptic_K(mm);
    for (int j = 1; j <= 6; ++j) {
      const double u = (0.15 + 0.11 * j) * K;
      const cubic::JacobiTriple t = cubic::jacobi_sn_cn_dn(u, mm);
      worst_fd = std::max({worst_fd, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0),
                           std::abs(t.dn * t.dn + mm * t.sn * t.sn - 1.0)});
      const double h = 1e-6;
      auto dq = [&](int which) {
        auto f = [&](double x) {
          const cubic::JacobiQuotients q = cubic::jacobi_quotients(x, mm);
          return which == 0 ? q.ns : (which == 1 ? q.cs : q.ds);
        };
        return oracle::finite_diff(f, u, 1, h);
      };
      const cubic::JacobiQuotients q = cubic::jacobi_quotients(u, mm);
      worst_fd = std::max({worst_fd, std::abs(dq(0) - q.cs * q.ds),
                           std::abs(dq(1) - q.ns * q.ds), std::abs(dq(2) - q.cs * q.ns)});
    }
  }
  if (worst_fd > fd_tol) ++rep.failures;

  {
    Rng prng(opts.seed ^ 0x5eedULL);
    for (int i = 0; i < 8; ++i) {
      const double e1 = prng.uniform(0.5, 3.0);
      const double e2 = prng.uniform(0.0, e1);
      double lo = 0.0, hi = 0.0;
      for (int j = 0; j <= 24; ++j) {
        const cubic::EigenvalueTriple tr =
            cubic::jacobi_eigenvalue_parametrization(e1, e2, 0.3 + 0.08 * j);
        const double d32 = tr.q3 - tr.q2;
        if (j == 0) lo = hi = d32;
        lo = std::min(lo, d32);
        hi = std::max(hi, d32);
      }
      worst_const = std::max(worst_const, std::max(std::abs(hi - e1), std::abs(lo - e1)));
    }
    if (worst_const > const_tol) ++rep.failures;
  }

  rep.max_residual = std::max({worst_flow, worst_turning, worst_fd, worst_const});
  note(rep, "max_flow_residual", worst_flow);
  note(rep, "max_turning_residual", worst_turning);
  note(rep, "max_identity_fd_residual", worst_fd);
  note(rep, "max_difference_drift", worst_const);
  rep.pass = rep.failures == 0;
  return rep;
}

// conservation drifts of the coefficient dynamics for small degrees
SuiteReport run_dynamics(const SuiteOptions& opts) {
  SuiteReport rep;
  rep.suite = "dynamics";
  const double tol = opts.drift_tol >= 0 ? opts.drift_tol : 1e-8;
  dynamics::SimOptions so;
  so.tau_span = 5.0;
  so.steps = opts.cases > 0 ? opts.cases : 10000;
  so.sample_stride = 25;

  struct Config {
    std::vector<double> roots;
    bool coulomb = false;
  };
  const std::vector<Config> configs = {
      {{1.0, 4.0}, false}, {{1.0, 2.0, 3.0}, false}, {{0.5, 1.0, 2.0, 3.5}, false},
      {{1.0, 2.0, 3.0}, true}};

  for (const Config& cfg : configs) {
    ++rep.cases;
    try {
      const dynamics::PotentialSpec pot = cfg.coulomb ? dynamics::PotentialSpec::coulomb(0.5)
                                                      : dynamics::PotentialSpec::harmonic(1.0);
      const dynamics::DynamicsState init =
          dynamics::state_from_roots(cfg.roots, {0.6, 0.1, -0.2}, {0.3, 1.0, 0.1});
      const dynamics::Trajectory traj =
          dynamics::simulate_generalized(static_cast<int>(cfg.roots.size()), pot, init, so);
      double worst = 0.0;
      for (const dynamics::DriftStat& st : traj.report.items) {
        const bool gated = st.name == "E1" || st.name == "Etot" || st.name[0] == 'R';
        if (gated) worst = std::max(worst, st.max_rel);
      }
      rep.max_residual = std::max(rep.max_residual, worst);
      if (worst > tol) ++rep.failures;
    } catch (const Error& e) {
      ++rep.failures;
      rep.notes.push_back(std::string("config error: ") + e.what());
    }
  }
  note(rep, "drift_tol", tol);
  rep.pass = rep.failures == 0;
  return rep;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"vieta", "invariants", "theorem24", "euler-shift", "trig", "elliptic", "dynamics"};
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& opts) {
  if (name == "vieta") return run_vieta(opts);
  if (name == "invariants") return run_invariants(opts);
  if (name == "theorem24") return run_derivative_ladder(opts);
  if (name == "euler-shift") return run_euler_shift(opts);
  if (name == "trig") return run_trig(opts);
  if (name == "elliptic") return run_elliptic(opts);
  if (name == "dynamics") return run_dynamics(opts);
  raise(ErrorCode::UnknownSuite, "no suite named '" + name + "'");
}

}  // namespace polyflow::suites

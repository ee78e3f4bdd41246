// Acceptance gate: nine end-to-end criteria, one PASS/FAIL line each.
// Exit code is the number of failed criteria. Tolerances are pinned here.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "polyflow/cubic_special.hpp"
#include "polyflow/dynamics.hpp"
#include "polyflow/error.hpp"
#include "polyflow/evolution.hpp"
#include "polyflow/oracle.hpp"
#include "polyflow/poly_core.hpp"
#include "polyflow/reducer.hpp"
#include "polyflow/rng.hpp"

using namespace polyflow;

namespace {

constexpr double kSolveTol = 1e-7;          // C1: reducer vs oracle roots
constexpr double kWorkedRootTol = 1e-8;     // C2: worked cubic roots
constexpr double kWorkedInvTol = 1e-9;      // C2: stage invariants and drift
constexpr double kLadderRelTol = 1e-6;      // C3: derivative ladder vs finite differences
constexpr double kLeadingTol = 1e-9;        // C3: order-n derivative vs n!
constexpr double kEulerTol = 1e-8;          // C4: shift-sum residual at roots
constexpr double kInvarianceTol = 1e-9;     // C5: depressed invariants under translation
constexpr double kTrigTol = 1e-10;          // C6: trisection vs oracle
constexpr double kFlowResidualTol = 1e-6;   // C7: v^2 - rad(P1) along the flow
constexpr double kTurningTol = 1e-6;        // C7: turning values as quartic roots
constexpr double kJacobiFdTol = 1e-7;       // C7: identities and quotient ODEs
constexpr double kParamConstTol = 1e-10;    // C7: q3 - q2 constancy
constexpr double kDriftTol = 1e-8;          // C8: conserved-monitor drifts
constexpr double kQuadTol = 1e-8;           // C8: hyperbolic endpoint values
constexpr double kReductionTol = 1e-6;      // C8: Newtonian comparison
constexpr double kClosedFormTol = 1e-9;     // C9: march vs closed-form ladder
constexpr double kHalvingGain = 8.0;        // C9: error reduction per step halving

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

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

// C1: the reduction solver agrees with the root oracle on 500 random instances.
std::string criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  Rng rng(9001);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Case c = random_case(rng);
    const std::vector<double> got = reducer::solve(c.poly).roots.roots;
    const std::vector<double> ref = oracle::sorted_real_roots({to_monic(c.poly)});
    if (got.size() != ref.size()) return "root count mismatch on case " + std::to_string(i);
    for (size_t j = 0; j < ref.size(); ++j) worst = std::max(worst, std::abs(got[j] - ref[j]));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (worst > kSolveTol) return "max deviation " + fmt(worst);
  if (secs >= 60.0) return "took " + fmt(secs) + "s";
  return "max deviation " + fmt(worst) + ", " + fmt(secs) + "s\n";
}

// C2: the worked cubic reduces to {1,2,3} with the expected stage invariants.
std::string criterion2() {
  const reducer::SolveResult res = reducer::solve(from_monic({1.0, -6.0, 11.0, -6.0}));
  const double want[] = {1.0, 2.0, 3.0};
  for (int j = 0; j < 3; ++j)
    if (std::abs(res.roots.roots[static_cast<size_t>(j)] - want[j]) > kWorkedRootTol)
      return "root " + std::to_string(j) + " off by " +
             fmt(res.roots.roots[static_cast<size_t>(j)] - want[j]);
  const reducer::ReductionStage& first = res.trace.stages.front();
  if (std::abs(first.inv_before.r[0] + 1.0) > kWorkedInvTol) return "R2 deviates";
  if (std::abs(first.inv_before.r0) > kWorkedInvTol) return "R0 deviates";
  for (const reducer::ReductionStage& st : res.trace.stages)
    if (st.inv_drift > kWorkedInvTol)
      return "stage drift " + fmt(st.inv_drift) + " at degree " + std::to_string(st.degree);
  return "";
}

// Central differences on a shrinking step ladder, extrapolated to step zero.
// The map being differentiated is a polynomial of degree at most 8, so three
// extrapolation levels cancel every truncation term exactly and only rounding
// is left; wide steps keep that rounding amplification negligible.
template <class F>
double fd_extrapolated(F f, double x, int k) {
  const double kRatio = 0.7071067811865476;  // halve h^2 per rung
  double u[4], d[4];
  for (int j = 0; j < 4; ++j) {
    const double h = 4.0 * std::pow(kRatio, j);
    u[j] = h * h;
    d[j] = static_cast<double>(oracle::finite_diff_ld(f, x, k, h));
  }
  for (int m = 1; m < 4; ++m)
    for (int j = 0; j + m < 4; ++j)
      d[j] = d[j + 1] + (d[j + 1] - d[j]) * u[j + m] / (u[j] - u[j + m]);
  return d[0];
}

// C3: derivative ladder matches finite differences; leading derivative is n!.
std::string criterion3() {
  Rng rng(9002);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Case c = random_case(rng);
    const InvariantSet inv = depress(c.poly);
    const double p1 = c.poly.p1();
    for (int k = 1; k <= std::min(4, inv.degree - 1); ++k) {
      const double got = psq_derivative(inv, p1, k);
      const double fd =
          fd_extrapolated([&](long double t) { return psq_of_p1_ld(inv, t); }, p1, k);
      const double rel = std::abs(got - fd) / (1.0 + std::abs(got));
      worst = std::max(worst, rel);
      if (rel > kLadderRelTol)
        return "order " + std::to_string(k) + " deviation " + fmt(rel) + " on case " +
               std::to_string(i);
    }
    double factorial = 1.0;
    for (int j = 2; j <= inv.degree; ++j) factorial *= j;
    if (std::abs(psq_derivative(inv, p1, inv.degree) - factorial) > kLeadingTol * factorial)
      return "order-n derivative deviates from n! on case " + std::to_string(i);
  }
  return "max relative deviation " + fmt(worst) + "\n";
}

// C4: the truncated exponential-shift sum vanishes at every root.
std::string criterion4() {
  Rng rng(9003);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Case c = random_case(rng);
    const double scale = 1.0 + std::abs(c.poly.psq);
    for (double root : c.roots)
      worst = std::max(worst, std::abs(euler_shift_residual(c.poly, root)) / scale);
  }
  if (worst > kEulerTol) return "max scaled residual " + fmt(worst);
  return "max scaled residual " + fmt(worst) + "\n";
}

// C5: depressed invariants are unchanged by root translation.
std::string criterion5() {
  Rng rng(9004);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Case c = random_case(rng);
    const InvariantSet a = depress(c.poly);
    const InvariantSet b = depress(from_monic(taylor_shift(to_monic(c.poly), -rng.uniform(-5.0, 5.0))));
    worst = std::max(worst, std::abs(a.r0 - b.r0) / (1.0 + std::abs(a.r0)));
    for (size_t j = 0; j < a.r.size(); ++j)
      worst = std::max(worst, std::abs(a.r[j] - b.r[j]) / (1.0 + std::abs(a.r[j])));
  }
  if (worst > kInvarianceTol) return "max scaled deviation " + fmt(worst);
  return "max scaled deviation " + fmt(worst) + "\n";
}

// C6: closed-form trisection agrees with the oracle; out-of-regime inputs
// fail deterministically.
std::string criterion6() {
  Rng rng(9005);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const Case c = random_case(rng, 3, 3);
    const DepressedRootSet got = cubic::solve_cubic_trig(cubic::cubic_invariants(depress(c.poly)));
    const std::vector<double> ref = oracle::sorted_real_roots({to_monic(c.poly)});
    const double mean = (ref[0] + ref[1] + ref[2]) / 3.0;
    for (int j = 0; j < 3; ++j)
      worst = std::max(worst,
                       std::abs(got.y[static_cast<size_t>(j)] - (ref[static_cast<size_t>(j)] - mean)));
  }
  if (worst > kTrigTol) return "max deviation " + fmt(worst);
  for (int rep = 0; rep < 2; ++rep) {
    bool threw = false;
    try {
      cubic::solve_cubic_trig({-1.0, 0.0});
    } catch (const Error& e) {
      threw = e.code() == ErrorCode::DiscriminantViolation;
    }
    if (!threw) return "negative-d input did not raise DiscriminantViolation";
    threw = false;
    try {
      cubic::solve_cubic_trig({3.0, 2.001});
    } catch (const Error& e) {
      threw = e.code() == ErrorCode::DiscriminantViolation;
    }
    if (!threw) return "outside-regime input did not raise DiscriminantViolation";
  }
  return "max deviation " + fmt(worst) + "\n";
}

// C7: quartic flow consistency and the doubly periodic function layer.
std::string criterion7() {
  const cubic::CubicInvariants ci{1.0, 0.0};
  const double period = 2.0 * cubic::complete_elliptic_K(0.5) / (0.5 * std::sqrt(2.0));
  cubic::FlowOptions fo;
  fo.steps = 8192;
  const cubic::FlowResult flow = cubic::weierstrass_flow(ci, -0.5, 1.5 * period, fo);
  if (flow.max_residual > kFlowResidualTol) return "flow residual " + fmt(flow.max_residual);
  const cubic::RootsCheck rc = cubic::weierstrass_roots_check(flow);
  for (double r : rc.turning_residuals)
    if (r > kTurningTol) return "turning residual " + fmt(r);

  double worst_fd = 0.0;
  for (double m : {0.05, 0.3, 0.5, 0.7, 0.95}) {
    for (int j = 1; j <= 6; ++j) {
      const double u = 0.21 * j;
      const cubic::JacobiTriple t = cubic::jacobi_sn_cn_dn(u, m);
      worst_fd = std::max(worst_fd, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0));
      worst_fd = std::max(worst_fd, std::abs(t.dn * t.dn + m * t.sn * t.sn - 1.0));
      const cubic::JacobiQuotients q = cubic::jacobi_quotients(u, m);
      auto pick = [m](int which) {
        return [which, m](double x) {
          const cubic::JacobiQuotients qq = cubic::jacobi_quotients(x, m);
          return which == 0 ? qq.ns : (which == 1 ? qq.cs : qq.ds);
        };
      };
      const double h = 2e-6;
      worst_fd = std::max(worst_fd, std::abs(oracle::finite_diff(pick(0), u, 1, h) - q.cs * q.ds));
      worst_fd = std::max(worst_fd, std::abs(oracle::finite_diff(pick(1), u, 1, h) - q.ns * q.ds));
      worst_fd = std::max(worst_fd, std::abs(oracle::finite_diff(pick(2), u, 1, h) - q.cs * q.ns));
    }
  }
  if (worst_fd > kJacobiFdTol) return "function-layer deviation " + fmt(worst_fd);

  double worst_const = 0.0;
  for (const auto& [e1, e2] : {std::pair{2.0, 0.5}, std::pair{1.0, 0.25}, std::pair{3.5, 3.0}}) {
    for (int j = 0; j <= 16; ++j) {
      const cubic::EigenvalueTriple tr =
          cubic::jacobi_eigenvalue_parametrization(e1, e2, 0.3 + 0.09 * j);
      worst_const = std::max(worst_const, std::abs(tr.q3 - tr.q2 - e1));
      worst_const = std::max(worst_const, std::abs(tr.q1 - tr.q2 - e2));
    }
  }
  if (worst_const > kParamConstTol) return "difference constancy " + fmt(worst_const);
  return "flow residual " + fmt(flow.max_residual) + ", function layer " + fmt(worst_fd) + "\n";
}

// C8: particle runs conserve the invariant ladder; the quadratic case matches
// the hyperbolic solution; the coefficient dynamics reduce to Newton.
std::string criterion8() {
  using namespace dynamics;
  const std::vector<std::vector<double>> root_sets = {
      {1.0, 4.0}, {1.0, 2.0, 3.0}, {0.5, 1.0, 2.0, 3.5}, {0.5, 1.2, 2.0, 3.1, 4.4}};
  SimOptions opts;
  opts.tau_span = 5.0;
  opts.steps = 10000;
  opts.sample_stride = 20;
  double worst = 0.0;
  for (const std::vector<double>& roots : root_sets) {
    const DynamicsState init =
        state_from_roots(roots, Vec3{0.6, 0.1, -0.2}, Vec3{0.3, 1.0, 0.1});
    for (int which = 0; which < 2; ++which) {
      const PotentialSpec pot =
          which == 0 ? PotentialSpec::harmonic(1.0) : PotentialSpec::coulomb(0.5);
      const Trajectory traj =
          simulate_generalized(static_cast<int>(roots.size()), pot, init, opts);
      for (const DriftStat& st : traj.report.items) {
        if (st.name.rfind("Mdiff", 0) == 0 || st.name == "psq_identity") continue;
        worst = std::max(worst, st.max_rel);
        if (st.max_rel > kDriftTol)
          return st.name + " drift " + fmt(st.max_rel) + " at degree " +
                 std::to_string(roots.size());
      }
    }
  }

  FieldSet fields;
  fields.E = [](const Vec3&) { return Vec3{1.0, 0.0, 0.0}; };
  QuadState qinit;
  qinit.P0 = 2.0;
  SimOptions qopts;
  qopts.tau_span = 2.0;
  qopts.steps = 10000;
  const QuadTrajectory qt = simulate_quadratic(fields, qinit, qopts);
  const QuadSample& last = qt.samples.back();
  if (std::abs(last.P.x - 2.0 * std::sinh(2.0)) > kQuadTol) return "hyperbolic momentum deviates";
  if (std::abs(last.P0 - 2.0 * std::cosh(2.0)) > kQuadTol) return "hyperbolic energy deviates";
  if (std::abs(last.sparam - 2.0) > kQuadTol) return "arc parameter deviates";

  SimOptions ropts;
  ropts.tau_span = 10.0;
  ropts.steps = 10000;
  ropts.sample_stride = 20;
  const ReductionCheck rcheck = newtonian_reduction_check(
      3, PotentialSpec::harmonic(1.0),
      state_from_roots({1.0, 2.0, 3.0}, Vec3{0.6, 0.1, -0.2}, Vec3{0.3, 1.0, 0.1}), ropts);
  if (rcheck.max_r_dev > kReductionTol) return "position reduction dev " + fmt(rcheck.max_r_dev);
  if (rcheck.max_p_dev > kReductionTol) return "momentum reduction dev " + fmt(rcheck.max_p_dev);
  return "max drift " + fmt(worst) + ", reduction dev " +
         fmt(std::max(rcheck.max_r_dev, rcheck.max_p_dev)) + "\n";
}

// C9: the march agrees with the closed-form coefficient ladder, and halving
// the step cuts the endpoint error by at least the fourth-order factor.
std::string criterion9() {
  // one march per degree as the default integrator covers it: exact through
  // degree 4, fourth-order beyond, so the instances keep span * P1^4 small
  // enough for the default step to stay inside the closed-form budget
  const std::vector<std::vector<double>> marches = {
      {1.0, 3.0},
      {1.0, 2.0, 3.0},
      {0.5, 1.2, 2.0, 3.1},
      {1.0, 1.5, 2.0, 2.5, 3.0},
  };
  double worst_dev = 0.0;
  for (const std::vector<double>& roots : marches) {
    const NormalizedPolynomial qi = from_roots(roots);
    const evolution::EvolutionResult res = evolution::evolve_to_psq_zero(qi);
    const double dev = evolution::verify_against_closed_form(res.trace);
    worst_dev = std::max(worst_dev, dev);
    if (dev > kClosedFormTol)
      return "closed-form deviation " + fmt(dev) + " at degree " + std::to_string(qi.degree);
  }
  const double dev = worst_dev;

  // exact event location: smallest root of psq marching down from P_1
  const NormalizedPolynomial q = from_roots({0.8, 1.9, 3.1, 4.4, 6.2});
  const double exact = q.p1() - 0.8;
  evolution::EvolutionOptions eo;
  eo.adaptive = false;
  eo.drift_tol = 1.0;
  eo.step = q.p1() / 16.0;
  const double e1 =
      std::abs(evolution::evolve_to_psq_zero(q, eo).final_state.poly.p1() - exact);
  eo.step = q.p1() / 32.0;
  const double e2 =
      std::abs(evolution::evolve_to_psq_zero(q, eo).final_state.poly.p1() - exact);
  if (e1 <= 1e-14) return "coarse march unexpectedly exact";
  const double gain = e1 / std::max(e2, 1e-300);
  if (gain < kHalvingGain) return "halving gain " + fmt(gain);
  return "closed-form deviation " + fmt(dev) + ", halving gain " + fmt(gain) + "\n";
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* label;
    std::function<std::string()> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "random-instance solve vs oracle", criterion1},
      {2, "worked cubic reduction", criterion2},
      {3, "derivative ladder", criterion3},
      {4, "shift-sum residual at roots", criterion4},
      {5, "translation invariance", criterion5},
      {6, "trisection vs oracle", criterion6},
      {7, "quartic flow and function layer", criterion7},
      {8, "particle dynamics conservation", criterion8},
      {9, "closed-form match and step halving", criterion9},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    try {
      detail = c.body();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const bool ok = detail.empty() || detail.back() == '\n';
    if (!detail.empty() && detail.back() == '\n') detail.pop_back();
    if (ok) {
      std::printf("PASS criterion %d: %s%s%s\n", c.id, c.label, detail.empty() ? "" : " - ",
                  detail.c_str());
    } else {
      ++failures;
      std::printf("FAIL criterion %d: %s - %s\n", c.id, c.label, detail.c_str());
    }
  }
  return failures;
}

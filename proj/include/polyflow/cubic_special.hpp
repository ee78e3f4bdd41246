#pragma once

#include <array>
#include <utility>
#include <vector>

#include "polyflow/poly_core.hpp"

namespace polyflow::cubic {

/// Depressed-cubic data in the (d, r0) convention: the depressed cubic is
/// Y^3 - d Y - r0 with d = -R_2, and the P_1-flow radicand is
/// rad(x) = x^3 - d x + r0 (the psq polynomial of the same invariants).
struct CubicInvariants {
  double d = 0.0;
  double r0 = 0.0;
};

/// Extracts (d, r0) from a degree-3 InvariantSet.
CubicInvariants cubic_invariants(const InvariantSet& inv);

/// Three-distinct-real-root regime test: d > 0 and (r0/2)^2 < (d/3)^3.
bool three_real_regime(const CubicInvariants& ci);

/// Closed-form trisection solution of the depressed cubic. Outside the regime
/// (beyond a 1e-12 clamping band at the boundary) raises DiscriminantViolation.
/// Returns the ascending depressed roots (they sum to zero).
DepressedRootSet solve_cubic_trig(const CubicInvariants& ci);

/// Quartic-invariant data of the flow: 4 x^3 - g2 x - g3 = 4 rad(x), plus the
/// pairwise root differences e1 = q3 - q2, e2 = q1 - q3, e3 = q2 - q1 of a
/// root triple (they sum to zero).
struct EllipticConstants {
  double g2 = 0.0;
  double g3 = 0.0;
  std::array<double, 3> e{0.0, 0.0, 0.0};
};

EllipticConstants elliptic_constants(const CubicInvariants& ci);
EllipticConstants elliptic_constants(double q1, double q2, double q3);

struct FlowSample {
  double s = 0.0;
  double p1 = 0.0;
  double v = 0.0;  // dP_1/ds
};

struct FlowOptions {
  long steps = 4096;
  int branch = +1;            // sign of the initial velocity sqrt(rad)
  double blowup_guard = 1e6;  // truncate the flow when |P_1| passes this
};

struct FlowResult {
  CubicInvariants inv;
  std::vector<FlowSample> samples;
  std::vector<std::pair<double, double>> turning_points;  // (s, P_1)
  double max_residual = 0.0;  // max |v^2 - rad(P_1)| over samples
  bool truncated = false;
};

/// Integrates the second-order form P_1'' = (3 P_1^2 - d)/2 (smooth through
/// turning points) with v(0) = branch * sqrt(rad(p1_0)); rad(p1_0) <= 0 raises
/// RadicandNegative. Turning points (v = 0) are located by single-step bisection.
FlowResult weierstrass_flow(const CubicInvariants& ci, double p1_0, double s_span,
                            const FlowOptions& opts = {});

struct RootsCheck {
  double g2 = 0.0;
  double g3 = 0.0;
  std::vector<double> turning_residuals;  // |4 x^3 - g2 x - g3| at each turning value
  // sn^2 closed-form calibration of the bounded band (NaN when not applicable):
  double calibration_scale = 0.0;  // fitted lambda in u = lambda*sqrt(w3-w1)*(s-s0)
  double calibration_rms = 0.0;
};

/// Checks that turning values are roots of 4x^3 - g2 x - g3 and, inside the
/// bounded band, calibrates the argument scale of
///   P_1(s) = w1 + (w2-w1) sn^2(lambda sqrt(w3-w1) (s-s0), m), m = (w2-w1)/(w3-w1)
/// by least squares over lambda. Raises NoTurningPoint if the flow recorded none.
RootsCheck weierstrass_roots_check(const FlowResult& flow);

struct JacobiTriple {
  double sn = 0.0;
  double cn = 0.0;
  double dn = 0.0;
};

/// Jacobi elliptic functions via the arithmetic-geometric mean, parameter
/// convention m in [0,1] (m = 0: trigonometric, m = 1: hyperbolic).
/// Raises ModulusOutOfRange outside [0,1].
JacobiTriple jacobi_sn_cn_dn(double u, double m);

/// Quotient set with the sign convention that makes the derivative system
/// ns' = cs*ds, cs' = ns*ds, ds' = cs*ns hold without extra signs:
/// ns = -1/sn, cs = -cn/sn, ds = -dn/sn.
struct JacobiQuotients {
  double ns = 0.0;
  double cs = 0.0;
  double ds = 0.0;
};

JacobiQuotients jacobi_quotients(double u, double m);

/// Eigenvalue triple of the constant-difference flow:
/// q3 = e1*ns^2, q2 = e1*cs^2, q1 = e1*ds^2 with m = 1 - e2/e1, so that
/// q3 - q2 = e1 and q1 - q2 = e2 identically. Requires e1 > 0 and m in [0,1].
struct EigenvalueTriple {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  double m = 0.0;
};

EigenvalueTriple jacobi_eigenvalue_parametrization(double e1, double e2, double u);

/// Complete elliptic integral K(m) via the AGM; requires m in [0, 1).
double complete_elliptic_K(double m);

}  // namespace polyflow::cubic

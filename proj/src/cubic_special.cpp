#include "polyflow/cubic_special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyflow::cubic {

namespace {

constexpr double kPi = 3.141592653589793238462643383279;

double radicand(const CubicInvariants& ci, double x) { return (x * x - ci.d) * x + ci.r0; }

struct FlowState {
  double u, v;
};

FlowState flow_rk4(const CubicInvariants& ci, FlowState y, double h) {
  auto acc = [&](double u) { return 0.5 * (3.0 * u * u - ci.d); };
  const double k1u = y.v, k1v = acc(y.u);
  const double k2u = y.v + 0.5 * h * k1v, k2v = acc(y.u + 0.5 * h * k1u);
  const double k3u = y.v + 0.5 * h * k2v, k3v = acc(y.u + 0.5 * h * k2u);
  const double k4u = y.v + h * k3v, k4v = acc(y.u + h * k3u);
  return {y.u + (h / 6.0) * (k1u + 2 * k2u + 2 * k3u + k4u),
          y.v + (h / 6.0) * (k1v + 2 * k2v + 2 * k3v + k4v)};
}

// rms of the sn^2 model against the window samples for a given argument scale
double band_model_rms(const std::vector<FlowSample>& window, double s0, double w1, double w2,
                      double kappa, double m, double lambda) {
  if (window.empty()) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (const FlowSample& smp : window) {
    const JacobiTriple jt = jacobi_sn_cn_dn(lambda * kappa * (smp.s - s0), m);
    const double model = w1 + (w2 - w1) * jt.sn * jt.sn;
    const double diff = smp.p1 - model;
    acc += diff * diff;
  }
  return std::sqrt(acc / static_cast<double>(window.size()));
}

}  // namespace

CubicInvariants cubic_invariants(const InvariantSet& inv) {
  if (inv.degree != 3) raise(ErrorCode::InvalidArgument, "cubic invariants need degree 3");
  return {-inv.rk(2), inv.r0};
}

bool three_real_regime(const CubicInvariants& ci) {
  if (!(ci.d > 0)) return false;
  const double lhs = (ci.r0 / 2.0) * (ci.r0 / 2.0);
  const double rhs = (ci.d / 3.0) * (ci.d / 3.0) * (ci.d / 3.0);
  return lhs < rhs;
}

DepressedRootSet solve_cubic_trig(const CubicInvariants& ci) {
  if (!(ci.d > 0))
    raise(ErrorCode::DiscriminantViolation, "three distinct real roots need d > 0");
  double arg = 1.5 * std::sqrt(3.0) * ci.r0 / std::pow(ci.d, 1.5);
  if (std::abs(arg) >= 1.0) {
    if (std::abs(arg) - 1.0 <= 1e-12 * std::max(1.0, std::abs(arg)))
      arg = std::clamp(arg, -1.0, 1.0);
    else
      raise(ErrorCode::DiscriminantViolation,
            "discriminant condition (r0/2)^2 < (d/3)^3 violated: repeated or complex roots");
  }
  const double theta = std::acos(arg) / 3.0;
  const double s3d = std::sqrt(3.0 * ci.d);
  const double c = std::cos(theta), s = std::sin(theta);
  // the literal trisection triple solves the r0-negated depressed cubic;
  // negate to land on Y^3 - dY - r0
  const double y1 = -(2.0 / 3.0) * s3d * c;
  const double y2 = (1.0 / 3.0) * s3d * (c + std::sqrt(3.0) * s);
  const double y3 = (1.0 / 3.0) * s3d * (c - std::sqrt(3.0) * s);
  DepressedRootSet out;
  out.y = {-y1, -y2, -y3};
  std::sort(out.y.begin(), out.y.end());
  return out;
}

EllipticConstants elliptic_constants(const CubicInvariants& ci) {
  EllipticConstants ec;
  ec.g2 = 4.0 * ci.d;
  ec.g3 = -4.0 * ci.r0;
  if (three_real_regime(ci)) {
    const DepressedRootSet y = solve_cubic_trig(ci);
    // label (q1, q2, q3) = (min, max, mid) to match the trisection ordering
    ec = elliptic_constants(y.y[0], y.y[2], y.y[1]);
  }
  return ec;
}

EllipticConstants elliptic_constants(double q1, double q2, double q3) {
  EllipticConstants ec;
  // invariants of the centered triple: d = -e2, r0 = e3
  const double mean = (q1 + q2 + q3) / 3.0;
  const double y1 = q1 - mean, y2 = q2 - mean, y3 = q3 - mean;
  const double d = -(y1 * y2 + y1 * y3 + y2 * y3);
  const double r0 = y1 * y2 * y3;
  ec.g2 = 4.0 * d;
  ec.g3 = -4.0 * r0;
  ec.e = {q3 - q2, q1 - q3, q2 - q1};
  return ec;
}

FlowResult weierstrass_flow(const CubicInvariants& ci, double p1_0, double s_span,
                            const FlowOptions& opts) {
  if (!(s_span > 0)) raise(ErrorCode::InvalidArgument, "span must be positive");
  if (opts.steps < 2) raise(ErrorCode::InvalidArgument, "need at least two steps");
  const double r0val = radicand(ci, p1_0);
  if (!(r0val > 0))
    raise(ErrorCode::RadicandNegative, "flow radicand is not positive at the start");

  FlowResult out;
  out.inv = ci;
  const double h = s_span / static_cast<double>(opts.steps);
  FlowState y{p1_0, (opts.branch < 0 ? -1.0 : 1.0) * std::sqrt(r0val)};
  double s = 0.0;
  out.samples.push_back({s, y.u, y.v});

  for (long i = 0; i < opts.steps; ++i) {
    FlowState yn = flow_rk4(ci, y, h);
    const double sn = s + h;
    if (!std::isfinite(yn.u) || !std::isfinite(yn.v))
      raise(ErrorCode::StepFailure, "non-finite flow state");
    if (std::abs(yn.u) > opts.blowup_guard) {
      out.truncated = true;
      break;
    }
    if ((y.v > 0 && yn.v < 0) || (y.v < 0 && yn.v > 0)) {
      // bisect the substep to land on v = 0
      double lo = 0.0, hi = h, t = 0.5 * h;
      FlowState yt = flow_rk4(ci, y, t);
      for (int it = 0; it < 60; ++it) {
        if ((yt.v > 0) == (y.v > 0))
          lo = t;
        else
          hi = t;
        t = 0.5 * (lo + hi);
        yt = flow_rk4(ci, y, t);
        if (std::abs(yt.v) <= 1e-13 * (1.0 + std::abs(yt.u))) break;
      }
      out.turning_points.emplace_back(s + t, yt.u);
    }
    y = yn;
    s = sn;
    out.samples.push_back({s, y.u, y.v});
    out.max_residual =
        std::max(out.max_residual, std::abs(y.v * y.v - radicand(ci, y.u)));
  }
  return out;
}

RootsCheck weierstrass_roots_check(const FlowResult& flow) {
  if (flow.turning_points.empty())
    raise(ErrorCode::NoTurningPoint, "the flow recorded no turning point");
  RootsCheck out;
  out.g2 = 4.0 * flow.inv.d;
  out.g3 = -4.0 * flow.inv.r0;
  for (const auto& [st, xt] : flow.turning_points) {
    (void)st;
    out.turning_residuals.push_back(std::abs(4.0 * xt * xt * xt - out.g2 * xt - out.g3));
  }

  out.calibration_scale = std::numeric_limits<double>::quiet_NaN();
  out.calibration_rms = std::numeric_limits<double>::quiet_NaN();

  // bounded-band calibration: radicand roots are the depressed roots of
  // Y^3 - dY - (-r0)
  const CubicInvariants neg{flow.inv.d, -flow.inv.r0};
  if (!three_real_regime(neg)) return out;
  const DepressedRootSet w = solve_cubic_trig(neg);
  const double w1 = w.y[0], w2 = w.y[1], w3 = w.y[2];
  if (!(w3 > w1)) return out;
  const double m = (w2 - w1) / (w3 - w1);
  const double kappa = std::sqrt(w3 - w1);

  // anchor at a lower turning (value near w1)
  double s0 = std::numeric_limits<double>::quiet_NaN();
  for (const auto& [st, xt] : flow.turning_points) {
    if (std::abs(xt - w1) <= 1e-3 * (1.0 + std::abs(w1))) {
      s0 = st;
      break;
    }
  }
  if (!std::isfinite(s0)) return out;

  // fit window: one expected period past the anchor
  const double period_guess = 2.0 * complete_elliptic_K(m) / (0.5 * kappa);
  std::vector<FlowSample> window;
  for (const FlowSample& smp : flow.samples)
    if (smp.s >= s0 && smp.s <= s0 + period_guess) window.push_back(smp);
  if (window.size() < 16) return out;

  // the rms landscape has alias basins where the model squeezes extra
  // periods into the window, so bracket the global basin with a coarse
  // grid scan before refining
  const double lo = 0.05, hi = 2.0;
  const int kGrid = 256;
  double best_lam = lo, best_rms = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double lam_i = lo + (hi - lo) * static_cast<double>(i) / kGrid;
    const double r = band_model_rms(window, s0, w1, w2, kappa, m, lam_i);
    if (r < best_rms) {
      best_rms = r;
      best_lam = lam_i;
    }
  }
  const double cell = (hi - lo) / kGrid;

  // golden-section refinement inside the winning grid cell's neighbourhood
  const double gr = 0.6180339887498949;
  double a = std::max(lo, best_lam - 2.0 * cell), b = std::min(hi, best_lam + 2.0 * cell);
  double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
  double f1 = band_model_rms(window, s0, w1, w2, kappa, m, c1);
  double f2 = band_model_rms(window, s0, w1, w2, kappa, m, c2);
  for (int it = 0; it < 120; ++it) {
    if (f1 < f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - gr * (b - a);
      f1 = band_model_rms(window, s0, w1, w2, kappa, m, c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + gr * (b - a);
      f2 = band_model_rms(window, s0, w1, w2, kappa, m, c2);
    }
  }
  const double lam = 0.5 * (a + b);
  out.calibration_scale = lam;
  out.calibration_rms = band_model_rms(window, s0, w1, w2, kappa, m, lam);
  return out;
}

JacobiTriple jacobi_sn_cn_dn(double u, double m) {
  if (!(m >= 0.0 && m <= 1.0))
    raise(ErrorCode::ModulusOutOfRange, "parameter m must lie in [0, 1]");
  if (!std::isfinite(u)) raise(ErrorCode::NonFinite, "argument is non-finite");
  if (m == 1.0) {
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
  }
  constexpr int kMax = 32;
  double a[kMax + 1], c[kMax + 1];
  a[0] = 1.0;
  c[0] = std::sqrt(m);
  double b = std::sqrt(1.0 - m);
  int N = 0;
  while (N < kMax && std::abs(c[N]) > 4e-18 * a[N]) {
    a[N + 1] = 0.5 * (a[N] + b);
    c[N + 1] = 0.5 * (a[N] - b);
    b = std::sqrt(a[N] * b);
    ++N;
  }
  double phi = std::ldexp(a[N] * u, N);  // 2^N a_N u
  for (int i = N; i >= 1; --i) {
    const double t = std::clamp(c[i] / a[i] * std::sin(phi), -1.0, 1.0);
    phi = 0.5 * (phi + std::asin(t));
  }
  JacobiTriple out;
  out.sn = std::sin(phi);
  out.cn = std::cos(phi);
  // dn stays on [sqrt(1 - m), 1] for real arguments, so the identity form is
  // exact in sign and avoids the 0/0 of the amplitude-quotient formula at
  // quarter periods
  out.dn = std::sqrt(std::max(0.0, 1.0 - m * out.sn * out.sn));
  return out;
}

JacobiQuotients jacobi_quotients(double u, double m) {
  const JacobiTriple t = jacobi_sn_cn_dn(u, m);
  if (t.sn == 0.0)
    raise(ErrorCode::InvalidArgument, "quotients are singular where sn vanishes");
  return {-1.0 / t.sn, -t.cn / t.sn, -t.dn / t.sn};
}

EigenvalueTriple jacobi_eigenvalue_parametrization(double e1, double e2, double u) {
  if (!(e1 > 0)) raise(ErrorCode::InvalidArgument, "largest difference e1 must be positive");
  double m = 1.0 - e2 / e1;
  if (m < 0.0 || m > 1.0) {
    if (std::abs(m) <= 1e-12)
      m = 0.0;
    else if (std::abs(m - 1.0) <= 1e-12)
      m = 1.0;
    else
      raise(ErrorCode::ModulusOutOfRange, "difference ratio leaves the [0, 1] parameter range");
  }
  const JacobiQuotients q = jacobi_quotients(u, m);
  EigenvalueTriple out;
  out.m = m;
  out.q3 = e1 * q.ns * q.ns;
  out.q2 = e1 * q.cs * q.cs;
  out.q1 = e1 * q.ds * q.ds;
  return out;
}

double complete_elliptic_K(double m) {
  if (!(m >= 0.0 && m < 1.0))
    raise(ErrorCode::ModulusOutOfRange, "K(m) needs m in [0, 1)");
  double a = 1.0, b = std::sqrt(1.0 - m);
  for (int it = 0; it < 64 && std::abs(a - b) > 1e-17 * a; ++it) {
    const double an = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = an;
  }
  return kPi / (2.0 * a);
}

}  // namespace polyflow::cubic

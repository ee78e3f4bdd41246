#include "polyflow/evolution.hpp"

#include <algorithm>
#include <cmath>

namespace polyflow::evolution {

namespace {

using State = std::vector<double>;

State axpy(const State& y, double h, const State& k) {
  State out(y.size());
  for (size_t i = 0; i < y.size(); ++i) out[i] = y[i] + h * k[i];
  return out;
}

State rk4_step(int degree, const State& y, double h) {
  const State k1 = ode_rhs(degree, y);
  const State k2 = ode_rhs(degree, axpy(y, 0.5 * h, k1));
  const State k3 = ode_rhs(degree, axpy(y, 0.5 * h, k2));
  const State k4 = ode_rhs(degree, axpy(y, h, k3));
  State out(y.size());
  for (size_t i = 0; i < y.size(); ++i)
    out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

bool all_finite(const State& y) {
  for (double v : y)
    if (!std::isfinite(v)) return false;
  return true;
}

NormalizedPolynomial poly_of_state(int degree, const State& y) {
  std::vector<double> p(y.begin(), y.end() - 1);
  return NormalizedPolynomial(degree, std::move(p), y.back());
}

double invariant_drift(int degree, const State& y, const InvariantSet& inv0) {
  const InvariantSet inv = depress(poly_of_state(degree, y));
  double d = std::abs(inv.r0 - inv0.r0) / (1.0 + std::abs(inv0.r0));
  for (size_t i = 0; i < inv.r.size(); ++i)
    d = std::max(d, std::abs(inv.r[i] - inv0.r[i]) / (1.0 + std::abs(inv0.r[i])));
  return d;
}

TraceSample make_sample(double s, const State& y) {
  TraceSample smp;
  smp.s = s;
  smp.p.assign(y.begin(), y.end() - 1);
  smp.psq = y.back();
  return smp;
}

// Locates the P^2 zero inside the step of size h taken downward from `base`:
// bisection on the substep size followed by Newton polish using the exact
// slope dP^2/ds = 2 P_{n-1}. Returns the substep t* and the refined state.
std::pair<double, State> refine_event(int degree, const State& base, double h, double tol_abs) {
  double lo = 0.0, hi = h;
  double t = h;
  State yt = rk4_step(degree, base, -t);
  for (int it = 0; it < 80; ++it) {
    const double v = yt.back();
    if (std::abs(v) <= tol_abs) break;
    if (v > 0)
      lo = t;
    else
      hi = t;
    t = 0.5 * (lo + hi);
    yt = rk4_step(degree, base, -t);
  }
  for (int it = 0; it < 3; ++it) {
    if (std::abs(yt.back()) <= 0.01 * tol_abs) break;
    const double slope = yt[static_cast<size_t>(degree) - 2];  // P_{n-1}
    if (!(slope > 0)) break;
    const double t2 = t + yt.back() / (2.0 * slope);
    if (!(t2 > 0.0) || t2 > 1.5 * h) break;
    State y2 = rk4_step(degree, base, -t2);
    if (std::abs(y2.back()) < std::abs(yt.back())) {
      t = t2;
      yt = std::move(y2);
    } else {
      break;
    }
  }
  return {t, std::move(yt)};
}

}  // namespace

std::vector<double> ode_rhs(int degree, const std::vector<double>& state) {
  const int n = degree;
  if (n < 2) raise(ErrorCode::DegreeTooSmall, "chain needs degree >= 2");
  if (static_cast<int>(state.size()) != n)
    raise(ErrorCode::InvalidArgument, "state must be [P_1..P_{n-1}, P^2]");
  std::vector<double> f(static_cast<size_t>(n), 0.0);
  f[0] = 1.0;
  // dP_j/ds = (n-j+2) P_{j-1} for j = 2..n-1 (index j-1 in the state)
  for (int j = 2; j <= n - 1; ++j)
    f[static_cast<size_t>(j) - 1] = static_cast<double>(n - j + 2) * state[static_cast<size_t>(j) - 2];
  f[static_cast<size_t>(n) - 1] = 2.0 * state[static_cast<size_t>(n) - 2];
  return f;
}

EvolutionResult evolve_to_psq_zero(const NormalizedPolynomial& poly, const EvolutionOptions& opts) {
  const int n = poly.degree;
  const InvariantSet inv0 = depress(poly);
  const double psq0 = poly.psq;
  const double tol_abs = opts.event_tol * (1.0 + std::abs(psq0));

  EvolutionResult out;
  out.trace.degree = n;
  out.trace.initial_invariants = inv0;
  out.trace.scheme = opts.scheme;

  State y0(poly.p.begin(), poly.p.end());
  y0.push_back(psq0);
  const double s0 = poly.p1();

  if (psq0 < -tol_abs)
    raise(ErrorCode::SingularEvolution, "P^2 is negative at the start of the march");
  if (std::abs(psq0) <= tol_abs) {
    // already at the event
    out.trace.samples.push_back(make_sample(s0, y0));
    out.trace.event_located = true;
    out.final_state = {poly, psq0, 0.0};
    return out;
  }
  if (!(y0[static_cast<size_t>(n) - 2] > 0))
    raise(ErrorCode::SingularEvolution,
          "P_{n-1} must be positive while P^2 > 0 (roots not strictly positive and simple)");

  if (opts.scheme == Scheme::EulerInX) {
    const long N = std::max<long>(1, opts.euler_steps);
    const double dx = psq0 / static_cast<double>(N);
    State y = y0;
    double s = s0;
    out.trace.samples.push_back(make_sample(s, y));
    for (long i = 1; i <= N; ++i) {
      const double slope = y[static_cast<size_t>(n) - 2];
      if (!(slope > 0))
        raise(ErrorCode::SingularEvolution, "P_{n-1} lost positivity during the x march");
      const double dp1 = -dx / (2.0 * slope);
      const State f = ode_rhs(n, y);
      for (int j = 0; j < n - 1; ++j) y[static_cast<size_t>(j)] += f[static_cast<size_t>(j)] * dp1;
      y[static_cast<size_t>(n) - 1] = psq0 - static_cast<double>(i) * dx;  // exact in x
      s += dp1;
      if (!all_finite(y)) raise(ErrorCode::StepFailure, "non-finite state during the x march");
      out.trace.steps++;
      if (i % opts.sample_stride == 0 || i == N) {
        out.trace.samples.push_back(make_sample(s, y));
        out.trace.invariant_drift =
            std::max(out.trace.invariant_drift, invariant_drift(n, y, inv0));
      }
    }
    y[static_cast<size_t>(n) - 1] = 0.0;
    out.trace.step_used = dx;
    out.trace.event_located = true;
    out.final_state = {poly_of_state(n, y), 0.0, s0 - s};
    return out;
  }

  if (!(s0 > 0))
    raise(ErrorCode::SingularEvolution,
          "P_1 must be positive while P^2 > 0 (roots not strictly positive)");

  double h = opts.step > 0 ? opts.step : s0 / 256.0;
  const int max_restarts = opts.adaptive ? 9 : 0;
  long steps_total = 0;

  for (int restart = 0; restart <= max_restarts; ++restart) {
    State y = y0;
    double s = s0;
    bool need_restart = false;
    out.trace.samples.clear();
    out.trace.samples.push_back(make_sample(s, y));
    out.trace.invariant_drift = 0.0;
    long accepted = 0;

    while (true) {
      if (++steps_total > opts.max_steps)
        raise(ErrorCode::MaxStepsExceeded, "step budget exhausted before the P^2 zero");
      State yn = rk4_step(n, y, -h);
      if (!all_finite(yn)) raise(ErrorCode::StepFailure, "non-finite state during the march");
      const double psq_new = yn.back();
      if (psq_new <= tol_abs) {
        auto [tstar, yev] = refine_event(n, y, h, tol_abs);
        s -= tstar;
        y = std::move(yev);
        out.trace.samples.push_back(make_sample(s, y));
        out.trace.invariant_drift =
            std::max(out.trace.invariant_drift, invariant_drift(n, y, inv0));
        out.trace.event_located = true;
        break;
      }
      if (psq_new >= y.back())
        raise(ErrorCode::SingularEvolution, "P^2 stopped decreasing before reaching zero");
      if (!(yn[static_cast<size_t>(n) - 2] > 0))
        raise(ErrorCode::SingularEvolution, "P_{n-1} changed sign before the P^2 zero");
      y = std::move(yn);
      s -= h;
      ++accepted;
      if (accepted % opts.sample_stride == 0) {
        const double d = invariant_drift(n, y, inv0);
        if (opts.adaptive && d > opts.drift_tol && restart < max_restarts) {
          h *= 0.5;
          need_restart = true;
          break;
        }
        out.trace.invariant_drift = std::max(out.trace.invariant_drift, d);
        out.trace.samples.push_back(make_sample(s, y));
      }
    }
    if (!need_restart) {
      out.trace.steps = steps_total;
      out.trace.step_used = h;
      // final state from the last recorded sample (the refined event state)
      const TraceSample& last = out.trace.samples.back();
      State yf(last.p.begin(), last.p.end());
      yf.push_back(last.psq);
      out.final_state.poly = poly_of_state(n, yf);
      out.final_state.x = last.psq;
      out.final_state.shift_accumulated = s0 - last.s;
      return out;
    }
  }
  raise(ErrorCode::MaxStepsExceeded, "drift-adaptive restarts exhausted");
}

double verify_against_closed_form(const EvolutionTrace& trace) {
  const int n = trace.degree;
  const InvariantSet& inv = trace.initial_invariants;
  double worst = 0.0;
  for (const TraceSample& smp : trace.samples) {
    for (int l = 1; l <= n - 1; ++l) {
      // P_{n-l} from the derivative ladder vs the integrated value
      const double ref = coefficient_from_invariants(inv, smp.s, l);
      const double got = smp.p[static_cast<size_t>(n - l) - 1];
      worst = std::max(worst, std::abs(got - ref) / (1.0 + std::abs(ref)));
    }
    const double pref = psq_of_p1(inv, smp.s);
    worst = std::max(worst, std::abs(smp.psq - pref) / (1.0 + std::abs(pref)));
  }
  return worst;
}

std::string trace_to_csv(const EvolutionTrace& trace) {
  const int n = trace.degree;
  std::string out = "s";
  for (int k = 1; k <= n - 1; ++k) out += ",P" + std::to_string(k);
  out += ",psq,drift\n";
  for (const TraceSample& smp : trace.samples) {
    State y(smp.p.begin(), smp.p.end());
    y.push_back(smp.psq);
    const double d = invariant_drift(n, y, trace.initial_invariants);
    out += format_double(smp.s);
    for (double v : smp.p) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += format_double(smp.psq);
    out += ',';
    out += format_double(d);
    out += '\n';
  }
  return out;
}

}  // namespace polyflow::evolution

#include "polyflow/reducer.hpp"

#include <algorithm>
#include <cmath>

namespace polyflow::reducer {

namespace {

using ld = long double;

double coefficient_bound(const std::vector<double>& monic) {
  double maxc = 0.0;
  for (size_t k = 1; k < monic.size(); ++k) maxc = std::max(maxc, std::abs(monic[k]));
  return 1.0 + maxc;
}

double root_magnitude_bound(const std::vector<double>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  double fuji = 0.0;
  for (int k = 1; k <= n; ++k)
    fuji = std::max(fuji, std::pow(std::abs(monic[static_cast<size_t>(k)]), 1.0 / k));
  return std::min(coefficient_bound(monic), 2.0 * fuji + 1e-30);
}

// strict sign alternation of monic coefficients: sign(a_k) == (-1)^k
bool alternating(const std::vector<double>& monic) {
  for (size_t k = 1; k < monic.size(); ++k) {
    const bool want_negative = (k & 1) != 0;
    if (want_negative ? !(monic[k] < 0.0) : !(monic[k] > 0.0)) return false;
  }
  return true;
}

double tight_bound(const std::vector<double>& monic) {
  const double cap = 1.0 + root_magnitude_bound(monic);
  if (alternating(monic)) return 1.0;  // roots already positive; keep the unit margin
  double lo = 0.0, hi = -1.0;
  for (double b = 1.0; b <= 2.0 * cap; b *= 2.0) {
    if (alternating(taylor_shift(monic, -b))) {
      hi = b;
      lo = (b == 1.0) ? 0.0 : 0.5 * b;
      break;
    }
  }
  if (hi < 0) return cap;  // no alternating shift found (input not real-rooted)
  for (int it = 0; it < 48; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (alternating(taylor_shift(monic, -mid)))
      hi = mid;
    else
      lo = mid;
  }
  const double bound = hi + 1.0;
  if (!alternating(taylor_shift(monic, -bound))) return cap;
  return bound;
}

double deflate_tol_for(const evolution::EvolutionState& state, double event_tol, double psq_start) {
  (void)state;
  return 10.0 * event_tol * (1.0 + std::abs(psq_start)) + 1e-15;
}

void newton_polish(std::vector<double>& roots, const std::vector<double>& monic) {
  const size_t n = monic.size() - 1;
  auto eval_pd = [&](double x, ld& v, ld& d) {
    v = 0.0L;
    d = 0.0L;
    for (size_t i = 0; i <= n; ++i) {
      d = d * x + v;
      v = v * x + monic[i];
    }
  };
  for (double& x : roots) {
    for (int it = 0; it < 2; ++it) {
      ld v, d;
      eval_pd(x, v, d);
      if (d == 0.0L) break;
      const double step = static_cast<double>(v / d);
      if (!std::isfinite(step)) break;
      const double x2 = x - step;
      ld v2, d2;
      eval_pd(x2, v2, d2);
      if (std::abs(static_cast<double>(v2)) <= std::abs(static_cast<double>(v)))
        x = x2;
      else
        break;
    }
  }
}

}  // namespace

std::pair<NormalizedPolynomial, double> precondition_shift(const NormalizedPolynomial& q,
                                                           BoundPolicy policy) {
  const std::vector<double> monic = to_monic(q);
  const double B =
      policy == BoundPolicy::CoefficientBound ? coefficient_bound(monic) : tight_bound(monic);
  return {from_monic(taylor_shift(monic, -B)), B};
}

std::pair<NormalizedPolynomial, double> precondition_shift(const NormalizedPolynomial& q) {
  return precondition_shift(q, BoundPolicy::CoefficientBound);
}

NormalizedPolynomial deflate_and_renormalize(const evolution::EvolutionState& state,
                                             double tol_abs) {
  const int n = state.poly.degree;
  if (n < 3)
    raise(ErrorCode::DegreeTooSmall, "deflation below degree 3 is the terminal linear case");
  if (std::abs(state.x) > tol_abs)
    raise(ErrorCode::NotAtZero, "P^2 has not reached zero within tolerance");
  std::vector<double> p(static_cast<size_t>(n) - 2, 0.0);
  for (int k = 1; k <= n - 2; ++k)
    p[static_cast<size_t>(k) - 1] =
        state.poly.p[static_cast<size_t>(k) - 1] * (static_cast<double>(n - k + 1) / (n - k));
  const double psq = 2.0 * state.poly.p[static_cast<size_t>(n) - 2];
  return NormalizedPolynomial(n - 1, std::move(p), psq);
}

NormalizedPolynomial deflate_and_renormalize(const evolution::EvolutionState& state) {
  const double scale = 1.0 + std::abs(2.0 * state.poly.p.back());
  return deflate_and_renormalize(state, 1e-6 * scale);
}

double deflate_linear_root(const evolution::EvolutionState& state, double tol_abs) {
  if (state.poly.degree != 2)
    raise(ErrorCode::InvalidArgument, "terminal extraction applies to degree 2 only");
  if (std::abs(state.x) > tol_abs)
    raise(ErrorCode::NotAtZero, "P^2 has not reached zero within tolerance");
  return 2.0 * state.poly.p1();
}

double deflate_linear_root(const evolution::EvolutionState& state) {
  const double scale = 1.0 + std::abs(2.0 * state.poly.p1());
  return deflate_linear_root(state, 1e-6 * scale);
}

SolveResult solve(const NormalizedPolynomial& input, const SolveOptions& opts) {
  const int n = input.degree;
  if (n > opts.max_degree || n > 16)
    raise(ErrorCode::DegreeTooLarge, "reduction supports degrees up to 16");

  auto [cur, B] = precondition_shift(input, opts.bound);
  SolveResult out;
  out.trace.precondition_shift = B;

  double event_tol = opts.evo.event_tol;
  for (int m = n; m >= 2; --m) {
    evolution::EvolutionOptions eo = opts.evo;
    eo.event_tol = event_tol;
    if (opts.evo.sample_stride == 1 && !opts.keep_traces) eo.sample_stride = 4;
    const double psq_start = cur.psq;
    evolution::EvolutionResult res = evolution::evolve_to_psq_zero(cur, eo);

    ReductionStage st;
    st.degree = m;
    st.p1_before = cur.p1();
    st.p1_after = res.final_state.poly.p1();
    st.shift = st.p1_before - st.p1_after;
    st.inv_before = res.trace.initial_invariants;
    st.inv_drift = res.trace.invariant_drift;
    const double dtol = deflate_tol_for(res.final_state, eo.event_tol, psq_start);
    if (m >= 3) {
      cur = deflate_and_renormalize(res.final_state, dtol);
      st.deflated = cur;
    } else {
      out.trace.final_linear_root = deflate_linear_root(res.final_state, dtol);
    }
    if (opts.keep_traces) out.trace.evo_traces.push_back(std::move(res.trace));
    out.trace.stages.push_back(std::move(st));
    event_tol *= 0.5;
  }

  std::vector<double> roots;
  roots.reserve(static_cast<size_t>(n));
  double acc = 0.0;
  for (const ReductionStage& st : out.trace.stages) {
    acc += st.shift;
    roots.push_back(acc);
  }
  roots.push_back(acc + out.trace.final_linear_root);
  for (double& r : roots) r -= B;

  if (opts.polish) newton_polish(roots, to_monic(input));

  const double tol = opts.separation_tol < 0 ? default_separation_tol(roots) : opts.separation_tol;
  out.roots = make_root_set(std::move(roots), tol);
  return out;
}

RootSet back_translate_closed_form(const ReductionTrace& trace) {
  if (trace.stages.empty()) raise(ErrorCode::IncompleteTrace, "trace holds no stages");
  const int n = trace.stages.front().degree;
  if (static_cast<int>(trace.stages.size()) != n - 1)
    raise(ErrorCode::IncompleteTrace, "trace must hold stages for every degree n..2");
  for (int i = 0; i < n - 1; ++i)
    if (trace.stages[static_cast<size_t>(i)].degree != n - i)
      raise(ErrorCode::IncompleteTrace, "stage degrees must descend from n to 2");
  if (!std::isfinite(trace.final_linear_root))
    raise(ErrorCode::IncompleteTrace, "missing terminal linear root");

  // Stage means scaled to the original degree: m[r] = (current sum of roots)/n
  // before the (r+1)-th event; m[n-1] covers the terminal one-root state.
  std::vector<double> m(static_cast<size_t>(n), 0.0);
  m[0] = trace.stages[0].p1_before;
  for (int r = 1; r <= n - 2; ++r)
    m[static_cast<size_t>(r)] =
        trace.stages[static_cast<size_t>(r)].p1_before * (static_cast<double>(n - r) / n);
  m[static_cast<size_t>(n) - 1] = trace.final_linear_root / n;

  // Descending roots from the telescoped mean differences.
  std::vector<double> roots;
  roots.reserve(static_cast<size_t>(n));
  double tail = 0.0;  // sum_{r=s}^{n} (1/r)(m[n-r] - m[n-r+1]), built from s = n upward
  for (int s = n; s >= 2; --s) {
    tail += (m[static_cast<size_t>(n - s)] - m[static_cast<size_t>(n - s) + 1]) / s;
    roots.push_back(static_cast<double>(n) * tail);
  }
  roots.push_back(static_cast<double>(n) * (m[static_cast<size_t>(n) - 1] + tail));

  for (double& q : roots) q -= trace.precondition_shift;
  const double tol = default_separation_tol(roots);
  return make_root_set(std::move(roots), tol);
}

}  // namespace polyflow::reducer

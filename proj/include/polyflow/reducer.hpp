#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "polyflow/evolution.hpp"
#include "polyflow/poly_core.hpp"

namespace polyflow::reducer {

/// How solve() chooses the positivity shift B.
///  - CoefficientBound: B = 1 + max_k |monic coefficient| (the documented
///    public policy; simple but inflates shifted coefficients like B^n).
///  - Tight: smallest B whose shifted coefficients strictly alternate in sign
///    (for a real-rooted monic this certifies all roots positive), found by
///    doubling + bisection, plus a margin of 1. Falls back to
///    1 + min(coefficient bound, 2 max_k |a_k|^{1/k}) if no alternating shift
///    is found (non-real-rooted input).
enum class BoundPolicy { Tight, CoefficientBound };

struct SolveOptions {
  evolution::EvolutionOptions evo;
  BoundPolicy bound = BoundPolicy::Tight;
  bool polish = true;           // short Newton refinement on the caller's monic
  double separation_tol = -1.0; // < 0: default scale-aware tolerance
  int max_degree = 16;
  bool keep_traces = false;     // retain full per-stage evolution traces
};

struct ReductionStage {
  int degree = 0;
  double p1_before = 0.0;
  double p1_after = 0.0;
  double shift = 0.0;  // p1_before - p1_after (the root extracted at this stage)
  InvariantSet inv_before;
  double inv_drift = 0.0;
  std::optional<NormalizedPolynomial> deflated;
};

struct ReductionTrace {
  std::vector<ReductionStage> stages;              // degrees n, n-1, ..., 2
  double final_linear_root = 0.0;                  // terminal root of the degree-2 stage
  double precondition_shift = 0.0;                 // B
  std::vector<evolution::EvolutionTrace> evo_traces;  // only when keep_traces
};

struct SolveResult {
  RootSet roots;
  ReductionTrace trace;
};

/// Shifts every root up by the coefficient-bound B (uniform policy: inputs
/// with already-positive roots are still shifted). Returns (shifted, B).
std::pair<NormalizedPolynomial, double> precondition_shift(const NormalizedPolynomial& q);
std::pair<NormalizedPolynomial, double> precondition_shift(const NormalizedPolynomial& q,
                                                           BoundPolicy policy);

/// At an event state (|x| <= tol_abs) removes the root at zero and renormalizes
/// the scaled coefficients to degree n-1:
/// P'_k = ((n-k+1)/(n-k)) P_k for k <= n-2, P'^2 = 2 P_{n-1}.
/// Requires degree >= 3; |x| > tol_abs raises NotAtZero.
NormalizedPolynomial deflate_and_renormalize(const evolution::EvolutionState& state, double tol_abs);
NormalizedPolynomial deflate_and_renormalize(const evolution::EvolutionState& state);

/// Terminal case of the recursion: at a degree-2 event state the remaining
/// nonzero root is 2 P_1.
double deflate_linear_root(const evolution::EvolutionState& state, double tol_abs);
double deflate_linear_root(const evolution::EvolutionState& state);

/// Full reduction: precondition, then for m = n..2 march P^2 to zero and
/// deflate; roots are the partial sums of the stage shifts (plus the terminal
/// linear root), translated back by B and sorted.
SolveResult solve(const NormalizedPolynomial& input, const SolveOptions& opts = {});

/// Reconstructs all roots from the stage means alone (closed-form route):
/// with m_r the pre-event mean of stage r scaled to the original degree, the
/// descending roots are n * sum_{r=s}^{n} (1/r)(m_{n-r} - m_{n-r+1}) for
/// s = 2..n and the largest adds n * m_{n-1}. Requires a complete stage list
/// (degrees n..2), else IncompleteTrace.
RootSet back_translate_closed_form(const ReductionTrace& trace);

}  // namespace polyflow::reducer

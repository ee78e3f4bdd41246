#pragma once

#include <string>
#include <vector>

#include "polyflow/poly_core.hpp"

namespace polyflow::evolution {

/// Integration scheme for driving P^2 to zero.
///  - P1MarchRK4: march s = P_1 downward with classical RK4 on the full
///    coefficient chain dP_1/ds = 1, dP_j/ds = (n-j+2) P_{j-1}, dP^2/ds = 2 P_{n-1},
///    with sign-change event detection and bisection+Newton refinement.
///  - EulerInX: first-order march of the original variable x = P^2 from its
///    initial value straight to 0 in equal steps (dP_1 = -dx / (2 P_{n-1})),
///    which terminates exactly at x = 0 without event detection.
enum class Scheme { P1MarchRK4, EulerInX };

struct EvolutionOptions {
  double step = 0.0;         // RK4 step in s; <= 0 selects P1_init / 256
  bool adaptive = true;      // halve the step and restart when drift exceeds drift_tol
  double event_tol = 1e-12;  // |P^2| <= event_tol * (1 + |P^2_init|) counts as zero
  double drift_tol = 5e-10;  // relative invariant drift budget for the whole march
  long max_steps = 200000;
  int sample_stride = 1;     // record every k-th accepted step in the trace
  Scheme scheme = Scheme::P1MarchRK4;
  long euler_steps = 4096;   // step count for EulerInX
};

/// March state: the current polynomial, the march variable x = P^2, and the
/// accumulated downward shift of P_1 since the march started.
struct EvolutionState {
  NormalizedPolynomial poly;
  double x = 0.0;
  double shift_accumulated = 0.0;
};

struct TraceSample {
  double s = 0.0;         // current P_1
  std::vector<double> p;  // P_1..P_{n-1}
  double psq = 0.0;
};

struct EvolutionTrace {
  int degree = 0;
  InvariantSet initial_invariants;
  std::vector<TraceSample> samples;
  double invariant_drift = 0.0;  // max relative drift of {R_0, R_2..R_{n-1}} over recorded samples
  long steps = 0;
  double step_used = 0.0;
  bool event_located = false;
  Scheme scheme = Scheme::P1MarchRK4;
};

struct EvolutionResult {
  EvolutionState final_state;
  EvolutionTrace trace;
};

/// Right-hand side of the coefficient chain in the march variable s = P_1.
/// state = [P_1..P_{n-1}, P^2], length degree.
std::vector<double> ode_rhs(int degree, const std::vector<double>& state);

/// Integrates the chain until P^2 crosses zero and refines the crossing.
/// Monotone-decrease and slope-sign guards raise SingularEvolution (the input
/// was not a strictly-positive simple-real-root configuration); exhausting the
/// step budget raises MaxStepsExceeded.
EvolutionResult evolve_to_psq_zero(const NormalizedPolynomial& poly, const EvolutionOptions& opts = {});

/// Max relative deviation of the recorded samples from the closed-form
/// coefficient ladder of the initial invariants (exact-solution check).
double verify_against_closed_form(const EvolutionTrace& trace);

/// CSV export: header then one row per sample
/// (s, P1..P{n-1}, psq, invariant drift at that sample).
std::string trace_to_csv(const EvolutionTrace& trace);

}  // namespace polyflow::evolution

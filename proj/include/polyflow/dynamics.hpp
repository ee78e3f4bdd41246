#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "polyflow/poly_core.hpp"

namespace polyflow::dynamics {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator*(double c, Vec3 a) { return {c * a.x, c * a.y, c * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm2(Vec3 a) { return dot(a, a); }
inline double norm(Vec3 a) { return std::sqrt(norm2(a)); }

/// Radial potential used by the particle models.
///  - harmonic: V = k |r|^2 / 2
///  - coulomb:  V = charge / |r| with a hard exclusion ball (entering it raises StepFailure)
///  - tabulated: natural cubic spline through (radius, value) samples, linear
///    extrapolation with end slopes outside the table (C^1 there, C^2 inside)
class PotentialSpec {
 public:
  enum class Kind { Harmonic, Coulomb, Tabulated };

  static PotentialSpec harmonic(double k);
  static PotentialSpec coulomb(double charge, double cutoff = 0.05);
  static PotentialSpec tabulated(std::vector<double> radius, std::vector<double> value);

  double value(const Vec3& r) const;
  Vec3 gradient(const Vec3& r) const;
  Kind kind() const { return kind_; }
  double cutoff() const { return cutoff_; }

 private:
  PotentialSpec() = default;
  double radial_value(double rho) const;
  double radial_slope(double rho) const;

  Kind kind_ = Kind::Harmonic;
  double k_ = 1.0;
  double charge_ = -1.0;
  double cutoff_ = 0.05;
  std::vector<double> knots_, vals_, m2_;  // spline data
};

/// Phase point of the generalized conservative system of degree n:
/// position r, momentum vector P (|P|^2 is the P^2 coefficient), and the outer
/// scaled coefficients P_1..P_{n-1}.
struct DynamicsState {
  double tau = 0.0;
  double sparam = 0.0;  // arc parameter s, ds/dtau = -(P.grad V)/|P|
  Vec3 r, P;
  std::vector<double> outer;  // P_1..P_{n-1}
};

/// Convenience: build a state whose coefficient data is consistent with the
/// given eigenvalue set (roots of the companion polynomial). The product of
/// the roots must be >= 0 since it equals |P|^2; P points along `direction`.
DynamicsState state_from_roots(const std::vector<double>& roots, Vec3 r0, Vec3 direction);

struct SimOptions {
  double tau_span = 10.0;
  long steps = 10000;
  int sample_stride = 10;
  bool richardson_audit = false;  // extra half-step run for an endpoint error estimate
};

struct Sample {
  double tau = 0.0, sparam = 0.0;
  Vec3 r, P;
  std::vector<double> outer;
  double psq = 0.0;  // |P|^2
  double V = 0.0;
};

struct DriftStat {
  std::string name;
  double initial = 0.0;
  double max_abs = 0.0;  // max |value - initial| over samples
  double max_rel = 0.0;  // max_abs scaled by 1 + |initial|
};

struct ConservationReport {
  std::vector<DriftStat> items;
  double audit_error = -1.0;  // Richardson endpoint estimate; -1 when not requested
  double max_rel() const;
  const DriftStat* find(const std::string& name) const;
};

struct Trajectory {
  int degree = 0;
  std::vector<Sample> samples;
  ConservationReport report;
  std::vector<double> initial_roots;  // ascending eigenvalues at tau = 0
};

/// Integrates dr/dtau = P, dP/dtau = -grad V * P_{n-1},
/// dP_1/dtau = -(P.grad V), dP_k/dtau = -(P.grad V)(n-k+2) P_{k-1}.
/// Conserved monitors reported per run: depressed invariants R_0, R_2..R_{n-1},
/// the energy chain E_1..E_{n-1}, total energy |P|^2/2 + W(V), the psq identity,
/// and pairwise differences of the instantaneous eigenvalues.
/// The initial coefficient data must describe a real simple-root configuration
/// (checked with the root oracle), else InconsistentInit. Degree is limited to 8
/// by the energy-chain constructor.
Trajectory simulate_generalized(int n, const PotentialSpec& pot, const DynamicsState& init,
                                const SimOptions& opts);

// ---- quadratic (degree-2 / relativistic-kinematics) specialization ----

struct FieldSet {
  std::function<Vec3(const Vec3&)> E;  // defaults to zero field when empty
  std::function<Vec3(const Vec3&)> B;
};

struct QuadState {
  double tau = 0.0, sparam = 0.0, t = 0.0;
  Vec3 r, P;
  double P0 = 0.0;
};

struct QuadSample {
  double tau = 0.0, sparam = 0.0, t = 0.0;
  Vec3 r, P;
  double P0 = 0.0;
  double V = 0.0;
};

struct QuadTrajectory {
  std::vector<QuadSample> samples;
  ConservationReport report;  // Msq = P0^2 - |P|^2 always; E0 = P0 + V when potential-driven
};

/// dP/dtau = E P0 + P x B, dP0/dtau = E.P, dr/dtau = P, dt/dtau = P0,
/// ds/dtau = E.P/|P| (|E| at P = 0).
QuadTrajectory simulate_quadratic(const FieldSet& fields, const QuadState& init,
                                  const SimOptions& opts);
/// Same with E = -grad V and no magnetic field; adds the E0 = P0 + V monitor.
QuadTrajectory simulate_quadratic(const PotentialSpec& pot, const QuadState& init,
                                  const SimOptions& opts);

/// Arc-parameter form of the aligned constant-field case: dP/ds = P0,
/// dP0/ds = P (field strength absorbed into s). Rows are {s, P, P0}.
std::vector<std::array<double, 3>> quadratic_s_march(double P_init, double P0_init, double s_span,
                                                     long steps);

// ---- energy constants and the effective potential ----

/// Values E_k = P_k + g_k(V) built by the substitution recursion
/// g_1 = V, g_k = (n-k+2) (E_{k-1} V - int_0^V g_{k-1}); the chain also yields
/// W(V) = E_{n-1} V - int_0^V g_{n-1} with dW/dV = P_{n-1}(V).
/// Degree is limited to 8.
struct EnergyChain {
  int degree = 0;
  std::vector<double> values;            // E_1..E_{n-1}
  std::vector<std::vector<double>> g;    // g_k ascending coefficients, k = 1..n-1
  std::vector<double> w_coeffs;          // W ascending coefficients

  double g_at(int k, double V) const;    // g_k(V)
  double W(double V) const;
  double dWdV(double V) const;
};

EnergyChain make_energy_chain(int n, const std::vector<double>& outer0, double V0);

/// Closed-form effective potential
///   W(V) = (1/2) sum_{k=1}^{n} (k+1) E_{n-k} (-1)^{k+1} V^k,  E_0 = 1/(n+1),
/// with energies = {E_1..E_{n-1}}. Equal to EnergyChain::W (tested, not assumed).
double effective_potential(int n, const std::vector<double>& energies, double V);

/// Total conserved energy (1/2) psq(E_1) from the initial invariants.
double total_energy(const InvariantSet& inv, double e1);

struct ReductionCheck {
  double max_r_dev = 0.0;
  double max_p_dev = 0.0;
};

/// Runs the full coefficient dynamics and the reduced Newtonian system
/// dP/dtau = -dW/dV(V(r)) grad V side by side with the same step and compares
/// the (r, P) samples.
ReductionCheck newtonian_reduction_check(int n, const PotentialSpec& pot,
                                         const DynamicsState& init, const SimOptions& opts);

/// Trajectory CSV export (header + one row per sample).
std::string trajectory_to_csv(const Trajectory& traj);
std::string trajectory_to_csv(const QuadTrajectory& traj);

}  // namespace polyflow::dynamics

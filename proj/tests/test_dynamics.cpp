#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "polyflow/dynamics.hpp"
#include "polyflow/oracle.hpp"
#include "polyflow/poly_core.hpp"
#include "polyflow/rng.hpp"

using namespace polyflow;
using namespace polyflow::dynamics;

namespace {

template <class Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvalidArgument;
}

DynamicsState reference_init() {
  return state_from_roots({1.0, 2.0, 3.0}, Vec3{0.6, 0.1, -0.2}, Vec3{0.3, 1.0, 0.1});
}

}  // namespace

TEST_CASE("state built from an eigenvalue set") {
  const DynamicsState st = state_from_roots({1.0, 2.0, 3.0}, Vec3{0.5, 0.0, 0.0}, Vec3{0.0, 0.0, 2.0});
  REQUIRE(st.outer.size() == 2);
  CHECK(st.outer[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(st.outer[1] == doctest::Approx(5.5).epsilon(1e-14));
  CHECK(norm2(st.P) == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(st.P.x == doctest::Approx(0.0));
  CHECK(st.P.z == doctest::Approx(std::sqrt(6.0)).epsilon(1e-13));
  CHECK(code_of([] {
          state_from_roots({-1.0, 2.0, 3.0}, Vec3{1.0, 0.0, 0.0}, Vec3{1.0, 0.0, 0.0});
        }) == ErrorCode::InconsistentInit);
}

TEST_CASE("total energy from invariants") {
  const InvariantSet inv = depress(from_roots({1.0, 2.0, 3.0}));
  CHECK(total_energy(inv, 2.0) == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("energy chain matches the closed-form effective potential") {
  Rng rng(2718);
  for (int n = 2; n <= 8; ++n) {
    for (int rep = 0; rep < 10; ++rep) {
      std::vector<double> outer0(static_cast<size_t>(n - 1));
      for (double& p : outer0) p = rng.uniform(0.2, 4.0);
      const double v0 = rng.uniform(-1.5, 1.5);
      const EnergyChain chain = make_energy_chain(n, outer0, v0);
      REQUIRE(chain.values.size() == static_cast<size_t>(n - 1));
      for (int j = -4; j <= 4; ++j) {
        const double v = 0.45 * j;
        CHECK(chain.g_at(1, v) == doctest::Approx(v));
        const double direct = effective_potential(n, chain.values, v);
        CHECK(chain.W(v) == doctest::Approx(direct).epsilon(1e-11));
        const double fd = oracle::finite_diff([&](double x) { return chain.W(x); }, v, 1, 1e-6);
        CHECK(chain.dWdV(v) == doctest::Approx(fd).epsilon(1e-6));
      }
    }
  }
  CHECK(code_of([] { make_energy_chain(9, std::vector<double>(8, 1.0), 0.0); }) ==
        ErrorCode::DegreeTooLarge);
}

TEST_CASE("cubic chain closes the depressed-invariant identity") {
  // E_2 = (R_2 + 3 E_1^2) / 2 for degree 3
  const double v0 = 0.37;
  const EnergyChain chain = make_energy_chain(3, {2.0, 5.5}, v0);
  const double r2 = -1.0;  // depressed invariant of the {1,2,3} configuration
  CHECK(chain.values[1] ==
        doctest::Approx((r2 + 3.0 * chain.values[0] * chain.values[0]) / 2.0).epsilon(1e-12));
}

TEST_CASE("harmonic runs conserve the invariant ladder") {
  SimOptions opts;
  opts.tau_span = 5.0;
  opts.steps = 4000;
  opts.sample_stride = 10;
  const PotentialSpec pot = PotentialSpec::harmonic(1.0);
  const Trajectory traj = simulate_generalized(3, pot, reference_init(), opts);

  REQUIRE(traj.initial_roots.size() == 3);
  CHECK(traj.initial_roots[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(traj.initial_roots[2] == doctest::Approx(3.0).epsilon(1e-9));

  const DriftStat* r2 = traj.report.find("R2");
  REQUIRE(r2 != nullptr);
  CHECK(r2->initial == doctest::Approx(-1.0).epsilon(1e-12));
  for (const char* name : {"R0", "R2", "E1", "E2", "Etot", "psq_identity"}) {
    const DriftStat* d = traj.report.find(name);
    REQUIRE_MESSAGE(d != nullptr, name);
    CHECK_MESSAGE(d->max_rel <= 1e-8, name);
  }

  // radial force: the angular momentum r x P is conserved exactly
  const Sample& first = traj.samples.front();
  const Vec3 L0 = cross(first.r, first.P);
  for (const Sample& smp : traj.samples) {
    const Vec3 L = cross(smp.r, smp.P);
    CHECK(norm(L - L0) <= 1e-10 * (1.0 + norm(L0)));
  }
}

TEST_CASE("repulsive singular potential conserves the same ladder") {
  SimOptions opts;
  opts.tau_span = 5.0;
  opts.steps = 6000;
  opts.sample_stride = 20;
  const PotentialSpec pot = PotentialSpec::coulomb(0.5);
  const Trajectory traj = simulate_generalized(3, pot, reference_init(), opts);
  for (const char* name : {"R0", "R2", "E1", "E2", "Etot"}) {
    const DriftStat* d = traj.report.find(name);
    REQUIRE_MESSAGE(d != nullptr, name);
    CHECK_MESSAGE(d->max_rel <= 1e-8, name);
  }
  CHECK(traj.report.max_rel() >= 0.0);
}

TEST_CASE("attractive singular potential trips the exclusion ball") {
  SimOptions opts;
  opts.tau_span = 5.0;
  opts.steps = 2000;
  const PotentialSpec pot = PotentialSpec::coulomb(-1.0, 0.3);
  const DynamicsState init =
      state_from_roots({1.0, 4.0}, Vec3{0.5, 0.0, 0.0}, Vec3{-1.0, 0.0, 0.0});
  CHECK(code_of([&] { simulate_generalized(2, pot, init, opts); }) == ErrorCode::StepFailure);
}

TEST_CASE("initial data must describe distinct real eigenvalues") {
  SimOptions opts;
  opts.steps = 100;
  DynamicsState bad;
  bad.r = Vec3{1.0, 0.0, 0.0};
  bad.P = Vec3{1.0, 0.0, 0.0};
  bad.outer = {0.0};  // monic X^2 + 1: complex pair
  CHECK(code_of([&] {
          simulate_generalized(2, PotentialSpec::harmonic(1.0), bad, opts);
        }) == ErrorCode::InconsistentInit);

  std::vector<double> nine(9);
  for (int i = 0; i < 9; ++i) nine[static_cast<size_t>(i)] = 1.0 + i;
  const DynamicsState big = state_from_roots(nine, Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0});
  CHECK(code_of([&] {
          simulate_generalized(9, PotentialSpec::harmonic(1.0), big, opts);
        }) == ErrorCode::DegreeTooLarge);
}

TEST_CASE("richardson audit reports a small endpoint estimate") {
  SimOptions opts;
  opts.tau_span = 2.0;
  opts.steps = 2000;
  opts.sample_stride = 10;
  const PotentialSpec pot = PotentialSpec::harmonic(1.0);
  const Trajectory plain = simulate_generalized(3, pot, reference_init(), opts);
  CHECK(plain.report.audit_error == doctest::Approx(-1.0));
  opts.richardson_audit = true;
  const Trajectory audited = simulate_generalized(3, pot, reference_init(), opts);
  CHECK(audited.report.audit_error >= 0.0);
  CHECK(audited.report.audit_error <= 1e-8);
}

TEST_CASE("aligned constant field reproduces the hyperbolic solution") {
  FieldSet fields;
  fields.E = [](const Vec3&) { return Vec3{1.0, 0.0, 0.0}; };
  QuadState init;
  init.P0 = 2.0;
  SimOptions opts;
  opts.tau_span = 2.0;
  opts.steps = 8000;
  opts.sample_stride = 8;
  const QuadTrajectory traj = simulate_quadratic(fields, init, opts);
  const QuadSample& last = traj.samples.back();
  CHECK(last.P.x == doctest::Approx(2.0 * std::sinh(2.0)).epsilon(1e-9));
  CHECK(last.P0 == doctest::Approx(2.0 * std::cosh(2.0)).epsilon(1e-9));
  CHECK(last.sparam == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(last.t == doctest::Approx(last.P.x).epsilon(1e-9));  // both integrate P0
  const DriftStat* msq = traj.report.find("Msq");
  REQUIRE(msq != nullptr);
  CHECK(msq->initial == doctest::Approx(4.0));
  CHECK(msq->max_rel <= 1e-10);
  CHECK(traj.report.find("E0") == nullptr);  // no potential, no P0 + V monitor
}

TEST_CASE("potential-driven quadratic runs conserve the mass and energy monitors") {
  QuadState init;
  init.r = Vec3{1.0, 0.0, 0.0};
  init.P = Vec3{0.0, 0.5, 0.0};
  init.P0 = 2.0;
  SimOptions opts;
  opts.tau_span = 5.0;
  opts.steps = 10000;
  opts.sample_stride = 20;
  const QuadTrajectory traj = simulate_quadratic(PotentialSpec::harmonic(1.0), init, opts);
  const DriftStat* msq = traj.report.find("Msq");
  const DriftStat* e0 = traj.report.find("E0");
  REQUIRE(msq != nullptr);
  REQUIRE(e0 != nullptr);
  CHECK(e0->initial == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(msq->max_rel <= 1e-8);
  CHECK(e0->max_rel <= 1e-8);
}

TEST_CASE("arc-parameter march of the aligned case") {
  const auto rows = quadratic_s_march(0.0, 2.0, 1.5, 2000);
  REQUIRE(rows.size() == 2001);
  CHECK(rows.front()[0] == doctest::Approx(0.0));
  CHECK(rows.front()[1] == doctest::Approx(0.0));
  CHECK(rows.front()[2] == doctest::Approx(2.0));
  const auto& last = rows.back();
  CHECK(last[0] == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(last[1] == doctest::Approx(2.0 * std::sinh(1.5)).epsilon(1e-10));
  CHECK(last[2] == doctest::Approx(2.0 * std::cosh(1.5)).epsilon(1e-10));
  for (const auto& row : rows)
    CHECK(row[2] * row[2] - row[1] * row[1] == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("coefficient dynamics reduce to the Newtonian system") {
  SimOptions opts;
  opts.tau_span = 10.0;
  opts.steps = 10000;
  opts.sample_stride = 20;
  const ReductionCheck rc =
      newtonian_reduction_check(3, PotentialSpec::harmonic(1.0), reference_init(), opts);
  CHECK(rc.max_r_dev <= 1e-6);
  CHECK(rc.max_p_dev <= 1e-6);
}

TEST_CASE("tabulated potential reproduces a linear radial profile") {
  std::vector<double> radius, value;
  for (int i = 0; i <= 40; ++i) {
    radius.push_back(0.2 + 0.12 * i);
    value.push_back(3.0 * radius.back() + 1.0);
  }
  const PotentialSpec pot = PotentialSpec::tabulated(radius, value);
  const Vec3 pts[] = {{1.1, 0.7, -0.3}, {0.4, 0.1, 0.2}, {2.0, -2.5, 1.0}};
  for (const Vec3& r : pts) {
    const double rho = norm(r);
    CHECK(pot.value(r) == doctest::Approx(3.0 * rho + 1.0).epsilon(1e-9));
    const Vec3 g = pot.gradient(r);
    CHECK(g.x == doctest::Approx(3.0 * r.x / rho).epsilon(1e-9));
    CHECK(g.y == doctest::Approx(3.0 * r.y / rho).epsilon(1e-9));
    CHECK(g.z == doctest::Approx(3.0 * r.z / rho).epsilon(1e-9));
  }
  // outside the table: linear extrapolation with the end slope
  CHECK(pot.value(Vec3{6.0, 0.0, 0.0}) == doctest::Approx(19.0).epsilon(1e-9));
  CHECK(pot.value(Vec3{0.05, 0.0, 0.0}) == doctest::Approx(1.15).epsilon(1e-9));
}

TEST_CASE("trajectory exports") {
  SimOptions opts;
  opts.tau_span = 0.5;
  opts.steps = 100;
  opts.sample_stride = 10;
  const Trajectory traj =
      simulate_generalized(3, PotentialSpec::harmonic(1.0), reference_init(), opts);
  const std::string csv = trajectory_to_csv(traj);
  CHECK(csv.rfind("tau,s,rx,ry,rz,Px,Py,Pz,P1", 0) == 0);
  const size_t lines = static_cast<size_t>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(lines == traj.samples.size() + 1);

  QuadState qinit;
  qinit.r = Vec3{1.0, 0.0, 0.0};
  qinit.P0 = 2.0;
  const QuadTrajectory qt = simulate_quadratic(PotentialSpec::harmonic(1.0), qinit, opts);
  const std::string qcsv = trajectory_to_csv(qt);
  CHECK(qcsv.rfind("tau,s,t,rx", 0) == 0);
  CHECK(static_cast<size_t>(std::count(qcsv.begin(), qcsv.end(), '\n')) == qt.samples.size() + 1);
}

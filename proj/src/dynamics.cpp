#include "polyflow/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "polyflow/oracle.hpp"

namespace polyflow::dynamics {

namespace {

using State = std::vector<double>;

template <class Rhs>
State rk4_step(const Rhs& f, const State& y, double h) {
  auto axpy = [](const State& a, double c, const State& b) {
    State out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + c * b[i];
    return out;
  };
  const State k1 = f(y);
  const State k2 = f(axpy(y, 0.5 * h, k1));
  const State k3 = f(axpy(y, 0.5 * h, k2));
  const State k4 = f(axpy(y, h, k3));
  State out(y.size());
  for (size_t i = 0; i < y.size(); ++i)
    out[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

void check_state_finite(const State& y) {
  for (double v : y)
    if (!std::isfinite(v)) raise(ErrorCode::StepFailure, "integrator produced a non-finite value");
}

DriftStat drift_from_series(const std::string& name, const std::vector<double>& values) {
  DriftStat st;
  st.name = name;
  st.initial = values.empty() ? 0.0 : values.front();
  for (double v : values) st.max_abs = std::max(st.max_abs, std::abs(v - st.initial));
  st.max_rel = st.max_abs / (1.0 + std::abs(st.initial));
  return st;
}

double eval_ascending(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
  return acc;
}

std::vector<double> integrate_ascending(const std::vector<double>& c) {
  std::vector<double> out(c.size() + 1, 0.0);
  for (size_t j = 0; j < c.size(); ++j) out[j + 1] = c[j] / static_cast<double>(j + 1);
  return out;
}

std::vector<double> differentiate_ascending(const std::vector<double>& c) {
  std::vector<double> out;
  for (size_t j = 1; j < c.size(); ++j) out.push_back(c[j] * static_cast<double>(j));
  return out;
}

}  // namespace

// ---- PotentialSpec ----

PotentialSpec PotentialSpec::harmonic(double k) {
  if (!(k > 0)) raise(ErrorCode::InvalidArgument, "harmonic stiffness must be positive");
  PotentialSpec p;
  p.kind_ = Kind::Harmonic;
  p.k_ = k;
  return p;
}

PotentialSpec PotentialSpec::coulomb(double charge, double cutoff) {
  if (charge == 0.0) raise(ErrorCode::InvalidArgument, "charge must be nonzero");
  if (!(cutoff > 0)) raise(ErrorCode::InvalidArgument, "exclusion radius must be positive");
  PotentialSpec p;
  p.kind_ = Kind::Coulomb;
  p.charge_ = charge;
  p.cutoff_ = cutoff;
  return p;
}

PotentialSpec PotentialSpec::tabulated(std::vector<double> radius, std::vector<double> value) {
  const size_t n = radius.size();
  if (n < 3 || value.size() != n)
    raise(ErrorCode::InvalidArgument, "tabulated potential needs >= 3 matching samples");
  for (size_t i = 0; i + 1 < n; ++i)
    if (!(radius[i + 1] > radius[i]))
      raise(ErrorCode::InvalidArgument, "radii must be strictly increasing");
  if (!(radius[0] >= 0)) raise(ErrorCode::InvalidArgument, "radii must be nonnegative");
  PotentialSpec p;
  p.kind_ = Kind::Tabulated;
  p.knots_ = std::move(radius);
  p.vals_ = std::move(value);
  // natural cubic spline second derivatives (tridiagonal elimination)
  p.m2_.assign(n, 0.0);
  std::vector<double> diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double hl = p.knots_[i] - p.knots_[i - 1];
    const double hr = p.knots_[i + 1] - p.knots_[i];
    diag[i] = 2.0 * (hl + hr);
    upper[i] = hr;
    rhs[i] = 6.0 * ((p.vals_[i + 1] - p.vals_[i]) / hr - (p.vals_[i] - p.vals_[i - 1]) / hl);
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    const double hl = p.knots_[i] - p.knots_[i - 1];
    const double w = hl / diag[i - 1];
    diag[i] -= w * upper[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  for (size_t i = n - 1; i-- > 1;) p.m2_[i] = (rhs[i] - upper[i] * p.m2_[i + 1]) / diag[i];
  return p;
}

double PotentialSpec::radial_slope(double rho) const {
  switch (kind_) {
    case Kind::Harmonic:
      return k_ * rho;
    case Kind::Coulomb:
      if (rho < cutoff_)
        raise(ErrorCode::StepFailure, "trajectory entered the exclusion ball of the singularity");
      return -charge_ / (rho * rho);
    case Kind::Tabulated: {
      const size_t n = knots_.size();
      const double x = std::clamp(rho, knots_.front(), knots_.back());
      size_t hi = static_cast<size_t>(std::upper_bound(knots_.begin(), knots_.end(), x) -
                                      knots_.begin());
      hi = std::clamp<size_t>(hi, 1, n - 1);
      const size_t i = hi - 1;
      const double h = knots_[hi] - knots_[i];
      const double A = (knots_[hi] - x) / h;
      const double B = (x - knots_[i]) / h;
      return (vals_[hi] - vals_[i]) / h +
             (h / 6.0) * (-(3.0 * A * A - 1.0) * m2_[i] + (3.0 * B * B - 1.0) * m2_[hi]);
    }
  }
  return 0.0;
}

double PotentialSpec::radial_value(double rho) const {
  switch (kind_) {
    case Kind::Harmonic:
      return 0.5 * k_ * rho * rho;
    case Kind::Coulomb:
      if (rho < cutoff_)
        raise(ErrorCode::StepFailure, "trajectory entered the exclusion ball of the singularity");
      return charge_ / rho;
    case Kind::Tabulated: {
      const size_t n = knots_.size();
      if (rho <= knots_.front())
        return vals_.front() + radial_slope(knots_.front()) * (rho - knots_.front());
      if (rho >= knots_.back())
        return vals_.back() + radial_slope(knots_.back()) * (rho - knots_.back());
      size_t hi = static_cast<size_t>(std::upper_bound(knots_.begin(), knots_.end(), rho) -
                                      knots_.begin());
      hi = std::clamp<size_t>(hi, 1, n - 1);
      const size_t i = hi - 1;
      const double h = knots_[hi] - knots_[i];
      const double A = (knots_[hi] - rho) / h;
      const double B = (rho - knots_[i]) / h;
      return A * vals_[i] + B * vals_[hi] +
             ((A * A * A - A) * m2_[i] + (B * B * B - B) * m2_[hi]) * h * h / 6.0;
    }
  }
  return 0.0;
}

double PotentialSpec::value(const Vec3& r) const { return radial_value(norm(r)); }

Vec3 PotentialSpec::gradient(const Vec3& r) const {
  const double rho = norm(r);
  if (rho == 0.0) return {0.0, 0.0, 0.0};
  return (radial_slope(rho) / rho) * r;
}

// ---- energy chain and effective potential ----

double EnergyChain::g_at(int k, double V) const {
  if (k < 1 || k > degree - 1) raise(ErrorCode::IndexOutOfRange, "chain index outside [1, n-1]");
  return eval_ascending(g[static_cast<size_t>(k) - 1], V);
}

double EnergyChain::W(double V) const { return eval_ascending(w_coeffs, V); }

double EnergyChain::dWdV(double V) const {
  return eval_ascending(differentiate_ascending(w_coeffs), V);
}

EnergyChain make_energy_chain(int n, const std::vector<double>& outer0, double V0) {
  if (n < 2) raise(ErrorCode::DegreeTooSmall, "energy chain needs degree >= 2");
  if (n > 8) raise(ErrorCode::DegreeTooLarge, "recursive energy constructor supports degree <= 8");
  if (static_cast<int>(outer0.size()) != n - 1)
    raise(ErrorCode::InvalidArgument, "expected P_1..P_{n-1}");
  EnergyChain ch;
  ch.degree = n;
  ch.g.resize(static_cast<size_t>(n) - 1);
  ch.values.resize(static_cast<size_t>(n) - 1);
  ch.g[0] = {0.0, 1.0};  // g_1(V) = V
  ch.values[0] = outer0[0] + V0;
  for (int k = 2; k <= n - 1; ++k) {
    const std::vector<double> G = integrate_ascending(ch.g[static_cast<size_t>(k) - 2]);
    std::vector<double> gk(G.size(), 0.0);
    for (size_t j = 0; j < G.size(); ++j) {
      const double lin = (j == 1) ? ch.values[static_cast<size_t>(k) - 2] : 0.0;
      gk[j] = static_cast<double>(n - k + 2) * (lin - G[j]);
    }
    ch.g[static_cast<size_t>(k) - 1] = std::move(gk);
    ch.values[static_cast<size_t>(k) - 1] =
        outer0[static_cast<size_t>(k) - 1] + ch.g_at(k, V0);
  }
  // W(V) = E_{n-1} V - int_0^V g_{n-1}
  const std::vector<double> Gn = integrate_ascending(ch.g[static_cast<size_t>(n) - 2]);
  ch.w_coeffs.assign(Gn.size(), 0.0);
  for (size_t j = 0; j < Gn.size(); ++j) {
    const double lin = (j == 1) ? ch.values[static_cast<size_t>(n) - 2] : 0.0;
    ch.w_coeffs[j] = lin - Gn[j];
  }
  return ch;
}

double effective_potential(int n, const std::vector<double>& energies, double V) {
  if (n < 2) raise(ErrorCode::DegreeTooSmall, "effective potential needs degree >= 2");
  if (static_cast<int>(energies.size()) != n - 1)
    raise(ErrorCode::InvalidArgument, "expected E_1..E_{n-1}");
  double acc = 0.0, vk = 1.0;
  for (int k = 1; k <= n; ++k) {
    vk *= V;
    const double ek = (k == n) ? 1.0 / (n + 1) : energies[static_cast<size_t>(n - k) - 1];
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    acc += 0.5 * (k + 1) * ek * sign * vk;
  }
  return acc;
}

double total_energy(const InvariantSet& inv, double e1) { return 0.5 * psq_of_p1(inv, e1); }

// ---- generalized simulation ----

DynamicsState state_from_roots(const std::vector<double>& roots, Vec3 r0, Vec3 direction) {
  const NormalizedPolynomial poly = from_roots(roots);
  DynamicsState st;
  st.r = r0;
  st.outer = poly.p;
  if (poly.psq < 0)
    raise(ErrorCode::InconsistentInit,
          "eigenvalue product is negative and cannot equal |P|^2");
  const double dn = norm(direction);
  if (poly.psq > 0 && dn == 0.0)
    raise(ErrorCode::InvalidArgument, "need a direction for a nonzero momentum");
  st.P = (poly.psq > 0) ? (std::sqrt(poly.psq) / dn) * direction : Vec3{0.0, 0.0, 0.0};
  return st;
}

Trajectory simulate_generalized(int n, const PotentialSpec& pot, const DynamicsState& init,
                                const SimOptions& opts) {
  if (n < 2) raise(ErrorCode::DegreeTooSmall, "dynamics needs degree >= 2");
  if (n > 8) raise(ErrorCode::DegreeTooLarge, "the energy ladder is tabulated up to degree 8");
  if (static_cast<int>(init.outer.size()) != n - 1)
    raise(ErrorCode::InvalidArgument, "expected P_1..P_{n-1} in the initial state");
  if (opts.steps < 1) raise(ErrorCode::InvalidArgument, "need at least one step");
  if (!(opts.tau_span >= 0)) raise(ErrorCode::InvalidArgument, "span must be nonnegative");

  const double psq0 = norm2(init.P);
  const NormalizedPolynomial poly0(n, init.outer, psq0);
  const InvariantSet inv0 = depress(poly0);

  // the coefficient data must describe a real simple-eigenvalue configuration
  oracle::MonicPolynomial mp{to_monic(poly0)};
  double root_scale = 1.0;
  oracle::RootClassification cls = oracle::classify_roots(mp, 1e-7, 0.0);
  for (double v : cls.reals) root_scale = std::max(root_scale, std::abs(v));
  cls = oracle::classify_roots(mp, 1e-7, 1e-9 * root_scale);
  if (!cls.all_real_simple)
    raise(ErrorCode::InconsistentInit,
          "initial coefficients do not describe real simple eigenvalues");

  const double V0 = pot.value(init.r);
  const EnergyChain chain = make_energy_chain(n, init.outer, V0);

  auto rhs = [&](const State& y) {
    const Vec3 r{y[0], y[1], y[2]}, P{y[3], y[4], y[5]};
    const Vec3 gv = pot.gradient(r);
    const double sig = -dot(P, gv);
    State f(y.size(), 0.0);
    f[0] = P.x;
    f[1] = P.y;
    f[2] = P.z;
    const double pnm1 = y[6 + static_cast<size_t>(n) - 2];
    f[3] = -gv.x * pnm1;
    f[4] = -gv.y * pnm1;
    f[5] = -gv.z * pnm1;
    f[6] = sig;
    for (int k = 2; k <= n - 1; ++k)
      f[6 + static_cast<size_t>(k) - 1] =
          sig * static_cast<double>(n - k + 2) * y[6 + static_cast<size_t>(k) - 2];
    const double pn = norm(P);
    f.back() = pn > 0 ? sig / pn : 0.0;
    return f;
  };

  auto pack = [&](const DynamicsState& st) {
    State y;
    y.reserve(7 + init.outer.size());
    y.insert(y.end(), {st.r.x, st.r.y, st.r.z, st.P.x, st.P.y, st.P.z});
    y.insert(y.end(), st.outer.begin(), st.outer.end());
    y.push_back(st.sparam);
    return y;
  };
  auto record = [&](Trajectory& traj, double tau, const State& y) {
    Sample smp;
    smp.tau = tau;
    smp.r = {y[0], y[1], y[2]};
    smp.P = {y[3], y[4], y[5]};
    smp.outer.assign(y.begin() + 6, y.end() - 1);
    smp.sparam = y.back();
    smp.psq = norm2(smp.P);
    smp.V = pot.value(smp.r);
    traj.samples.push_back(std::move(smp));
  };

  auto run = [&](long steps) {
    Trajectory traj;
    traj.degree = n;
    State y = pack(init);
    const double h = opts.tau_span / static_cast<double>(steps);
    record(traj, init.tau, y);
    for (long i = 1; i <= steps && opts.tau_span > 0; ++i) {
      y = rk4_step(rhs, y, h);
      check_state_finite(y);
      if (i % opts.sample_stride == 0 || i == steps)
        record(traj, init.tau + h * static_cast<double>(i), y);
    }
    return traj;
  };

  Trajectory traj = run(opts.steps);
  traj.initial_roots = cls.reals;

  // conserved-quantity monitors
  const size_t ns = traj.samples.size();
  std::vector<std::string> names;
  std::vector<std::vector<double>> series;
  auto add_series = [&](const std::string& name) -> std::vector<double>& {
    names.push_back(name);
    series.emplace_back();
    series.back().reserve(ns);
    return series.back();
  };

  {
    auto& r0s = add_series("R0");
    for (const Sample& s : traj.samples)
      r0s.push_back(depress(NormalizedPolynomial(n, s.outer, s.psq)).r0);
  }
  for (int k = 2; k <= n - 1; ++k) {
    auto& rks = add_series("R" + std::to_string(k));
    for (const Sample& s : traj.samples)
      rks.push_back(depress(NormalizedPolynomial(n, s.outer, s.psq)).rk(k));
  }
  for (int k = 1; k <= n - 1; ++k) {
    auto& eks = add_series("E" + std::to_string(k));
    for (const Sample& s : traj.samples)
      eks.push_back(s.outer[static_cast<size_t>(k) - 1] + chain.g_at(k, s.V));
  }
  {
    auto& et = add_series("Etot");
    for (const Sample& s : traj.samples) et.push_back(0.5 * s.psq + chain.W(s.V));
  }
  {
    auto& pid = add_series("psq_identity");
    for (const Sample& s : traj.samples)
      pid.push_back(s.psq - psq_of_p1(inv0, s.outer[0]));
  }
  // pairwise differences of the instantaneous eigenvalues (independent root solve)
  {
    std::vector<std::vector<double>> diffs(static_cast<size_t>(n) * (n - 1) / 2);
    bool ok = true;
    for (const Sample& s : traj.samples) {
      try {
        const auto roots = oracle::sorted_real_roots(
            oracle::MonicPolynomial{to_monic(NormalizedPolynomial(n, s.outer, s.psq))}, 1e-5);
        size_t idx = 0;
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            diffs[idx++].push_back(roots[static_cast<size_t>(j)] - roots[static_cast<size_t>(i)]);
      } catch (const Error&) {
        ok = false;
        break;
      }
    }
    if (ok) {
      size_t idx = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          auto& ds = add_series("Mdiff_" + std::to_string(j + 1) + "_" + std::to_string(i + 1));
          ds = diffs[idx++];
        }
    }
  }

  for (size_t q = 0; q < names.size(); ++q)
    traj.report.items.push_back(drift_from_series(names[q], series[q]));

  if (opts.richardson_audit && opts.tau_span > 0) {
    SimOptions fine = opts;
    fine.richardson_audit = false;
    fine.steps = opts.steps * 2;
    fine.sample_stride = opts.sample_stride * 2;
    const Trajectory traj2 = run(fine.steps);
    const Sample& a = traj.samples.back();
    const Sample& b = traj2.samples.back();
    double diff = std::max({std::abs(a.r.x - b.r.x), std::abs(a.r.y - b.r.y),
                            std::abs(a.r.z - b.r.z), std::abs(a.P.x - b.P.x),
                            std::abs(a.P.y - b.P.y), std::abs(a.P.z - b.P.z)});
    for (size_t k = 0; k < a.outer.size(); ++k)
      diff = std::max(diff, std::abs(a.outer[k] - b.outer[k]));
    traj.report.audit_error = diff / 15.0;
  }
  return traj;
}

// ---- quadratic specialization ----

namespace {

QuadTrajectory simulate_quadratic_impl(const std::function<Vec3(const Vec3&)>& Efield,
                                       const std::function<Vec3(const Vec3&)>& Bfield,
                                       const PotentialSpec* pot, const QuadState& init,
                                       const SimOptions& opts) {
  if (opts.steps < 1) raise(ErrorCode::InvalidArgument, "need at least one step");
  if (!(opts.tau_span >= 0)) raise(ErrorCode::InvalidArgument, "span must be nonnegative");

  auto rhs = [&](const State& y) {
    const Vec3 r{y[0], y[1], y[2]}, P{y[3], y[4], y[5]};
    const double P0 = y[6];
    const Vec3 E = Efield ? Efield(r) : Vec3{0.0, 0.0, 0.0};
    const Vec3 B = Bfield ? Bfield(r) : Vec3{0.0, 0.0, 0.0};
    const Vec3 dP = P0 * E + cross(P, B);
    State f(y.size(), 0.0);
    f[0] = P.x;
    f[1] = P.y;
    f[2] = P.z;
    f[3] = dP.x;
    f[4] = dP.y;
    f[5] = dP.z;
    f[6] = dot(E, P);
    f[7] = P0;  // lab time
    const double pn = norm(P);
    f[8] = pn > 0 ? dot(E, P) / pn : norm(E);
    return f;
  };

  QuadTrajectory traj;
  State y{init.r.x, init.r.y, init.r.z, init.P.x, init.P.y, init.P.z, init.P0, init.t,
          init.sparam};
  const double h = opts.tau_span / static_cast<double>(opts.steps);
  auto record = [&](double tau) {
    QuadSample s;
    s.tau = tau;
    s.r = {y[0], y[1], y[2]};
    s.P = {y[3], y[4], y[5]};
    s.P0 = y[6];
    s.t = y[7];
    s.sparam = y[8];
    s.V = pot ? pot->value(s.r) : 0.0;
    traj.samples.push_back(std::move(s));
  };
  record(init.tau);
  for (long i = 1; i <= opts.steps && opts.tau_span > 0; ++i) {
    y = rk4_step(rhs, y, h);
    check_state_finite(y);
    if (i % opts.sample_stride == 0 || i == opts.steps)
      record(init.tau + h * static_cast<double>(i));
  }

  std::vector<double> msq, e0;
  msq.reserve(traj.samples.size());
  for (const QuadSample& s : traj.samples) {
    msq.push_back(s.P0 * s.P0 - norm2(s.P));
    if (pot) e0.push_back(s.P0 + s.V);
  }
  traj.report.items.push_back(drift_from_series("Msq", msq));
  if (pot) traj.report.items.push_back(drift_from_series("E0", e0));
  return traj;
}

}  // namespace

QuadTrajectory simulate_quadratic(const FieldSet& fields, const QuadState& init,
                                  const SimOptions& opts) {
  return simulate_quadratic_impl(fields.E, fields.B, nullptr, init, opts);
}

QuadTrajectory simulate_quadratic(const PotentialSpec& pot, const QuadState& init,
                                  const SimOptions& opts) {
  auto E = [&pot](const Vec3& r) { return -1.0 * pot.gradient(r); };
  return simulate_quadratic_impl(E, nullptr, &pot, init, opts);
}

std::vector<std::array<double, 3>> quadratic_s_march(double P_init, double P0_init, double s_span,
                                                     long steps) {
  if (steps < 1) raise(ErrorCode::InvalidArgument, "need at least one step");
  std::vector<std::array<double, 3>> rows;
  rows.reserve(static_cast<size_t>(steps) + 1);
  auto rhs = [](const State& y) { return State{y[1], y[0]}; };  // dP/ds = P0, dP0/ds = P
  State y{P_init, P0_init};
  const double h = s_span / static_cast<double>(steps);
  rows.push_back({0.0, y[0], y[1]});
  for (long i = 1; i <= steps; ++i) {
    y = rk4_step(rhs, y, h);
    check_state_finite(y);
    rows.push_back({h * static_cast<double>(i), y[0], y[1]});
  }
  return rows;
}

// ---- Newtonian reduction ----

ReductionCheck newtonian_reduction_check(int n, const PotentialSpec& pot,
                                         const DynamicsState& init, const SimOptions& opts) {
  const Trajectory full = simulate_generalized(n, pot, init, opts);
  const EnergyChain chain = make_energy_chain(n, init.outer, pot.value(init.r));

  auto rhs = [&](const State& y) {
    const Vec3 r{y[0], y[1], y[2]}, P{y[3], y[4], y[5]};
    const Vec3 gv = pot.gradient(r);
    const double wprime = chain.dWdV(pot.value(r));
    State f(6, 0.0);
    f[0] = P.x;
    f[1] = P.y;
    f[2] = P.z;
    f[3] = -wprime * gv.x;
    f[4] = -wprime * gv.y;
    f[5] = -wprime * gv.z;
    return f;
  };

  State y{init.r.x, init.r.y, init.r.z, init.P.x, init.P.y, init.P.z};
  const double h = opts.tau_span / static_cast<double>(opts.steps);
  ReductionCheck out;
  size_t cursor = 0;
  auto compare = [&](long step_index) {
    const double tau = init.tau + h * static_cast<double>(step_index);
    while (cursor < full.samples.size() &&
           std::abs(full.samples[cursor].tau - tau) > 0.25 * std::abs(h))
      ++cursor;
    if (cursor >= full.samples.size()) return;
    const Sample& s = full.samples[cursor];
    const Vec3 dr = s.r - Vec3{y[0], y[1], y[2]};
    const Vec3 dp = s.P - Vec3{y[3], y[4], y[5]};
    out.max_r_dev = std::max(out.max_r_dev, norm(dr));
    out.max_p_dev = std::max(out.max_p_dev, norm(dp));
  };
  compare(0);
  for (long i = 1; i <= opts.steps && opts.tau_span > 0; ++i) {
    y = rk4_step(rhs, y, h);
    check_state_finite(y);
    if (i % opts.sample_stride == 0 || i == opts.steps) compare(i);
  }
  return out;
}

// ---- report and CSV ----

double ConservationReport::max_rel() const {
  double m = 0.0;
  for (const DriftStat& st : items) m = std::max(m, st.max_rel);
  return m;
}

const DriftStat* ConservationReport::find(const std::string& name) const {
  for (const DriftStat& st : items)
    if (st.name == name) return &st;
  return nullptr;
}

std::string trajectory_to_csv(const Trajectory& traj) {
  std::string out = "tau,s,rx,ry,rz,Px,Py,Pz";
  for (int k = 1; k <= traj.degree - 1; ++k) out += ",P" + std::to_string(k);
  out += ",psq,V\n";
  for (const Sample& s : traj.samples) {
    out += format_double(s.tau);
    for (double v : {s.sparam, s.r.x, s.r.y, s.r.z, s.P.x, s.P.y, s.P.z}) {
      out += ',';
      out += format_double(v);
    }
    for (double v : s.outer) {
      out += ',';
      out += format_double(v);
    }
    out += ',';
    out += format_double(s.psq);
    out += ',';
    out += format_double(s.V);
    out += '\n';
  }
  return out;
}

std::string trajectory_to_csv(const QuadTrajectory& traj) {
  std::string out = "tau,s,t,rx,ry,rz,Px,Py,Pz,P0,V\n";
  for (const QuadSample& s : traj.samples) {
    out += format_double(s.tau);
    for (double v : {s.sparam, s.t, s.r.x, s.r.y, s.r.z, s.P.x, s.P.y, s.P.z, s.P0, s.V}) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

}  // namespace polyflow::dynamics

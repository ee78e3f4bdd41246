#include "polyflow/poly_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyflow {

namespace {

using ld = long double;

void check_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) raise(ErrorCode::NonFinite, std::string(what) + " contains a non-finite value");
}

int sign_pm(int k) { return (k & 1) ? -1 : +1; }  // (-1)^k

// Descending coefficient array of psq(t) = t^n + sum R_k t^{n-k} + R_0.
std::vector<ld> psq_coeffs(const InvariantSet& inv) {
  const int n = inv.degree;
  std::vector<ld> c(static_cast<size_t>(n) + 1, 0.0L);
  c[0] = 1.0L;
  for (int k = 2; k <= n - 1; ++k) c[k] = inv.rk(k);
  c[n] = inv.r0;
  return c;
}

ld horner_ld(const std::vector<ld>& c, ld t) {
  ld acc = 0.0L;
  for (ld ck : c) acc = acc * t + ck;
  return acc;
}

ld psq_derivative_ld(const InvariantSet& inv, ld p1, int order) {
  const int n = inv.degree;
  if (order < 0) raise(ErrorCode::IndexOutOfRange, "derivative order must be nonnegative");
  if (order > n) return 0.0L;
  std::vector<ld> c = psq_coeffs(inv);
  for (int pass = 0; pass < order; ++pass) {
    const int deg = static_cast<int>(c.size()) - 1;
    std::vector<ld> d(static_cast<size_t>(deg), 0.0L);
    for (int i = 0; i < deg; ++i) d[i] = c[i] * static_cast<ld>(deg - i);
    c = std::move(d);
  }
  return horner_ld(c, p1);
}

}  // namespace

NormalizedPolynomial::NormalizedPolynomial(int n, std::vector<double> coeffs, double psq_value)
    : degree(n), p(std::move(coeffs)), psq(psq_value) {
  if (degree < 2) raise(ErrorCode::DegreeTooSmall, "representation needs degree >= 2");
  if (static_cast<int>(p.size()) != degree - 1)
    raise(ErrorCode::InvalidArgument, "expected degree-1 scaled coefficients P_1..P_{n-1}");
  check_finite(p, "coefficient vector");
  if (!std::isfinite(psq)) raise(ErrorCode::NonFinite, "psq is non-finite");
}

double NormalizedPolynomial::pk(int k) const {
  if (k < 1 || k > degree - 1) raise(ErrorCode::IndexOutOfRange, "P_k index outside [1, n-1]");
  return p[static_cast<size_t>(k) - 1];
}

double InvariantSet::rk(int k) const {
  if (k < 2 || k > degree - 1) raise(ErrorCode::IndexOutOfRange, "R_k index outside [2, n-1]");
  return r[static_cast<size_t>(k) - 2];
}

double default_separation_tol(const std::vector<double>& roots) {
  double m = 0.0;
  for (double q : roots) m = std::max(m, std::abs(q));
  return 1e-7 * (1.0 + m);
}

RootSet make_root_set(std::vector<double> roots, double separation_tol) {
  if (roots.size() < 2) raise(ErrorCode::DegreeTooSmall, "a root set needs at least two roots");
  check_finite(roots, "root set");
  std::sort(roots.begin(), roots.end());
  double min_gap = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i + 1 < roots.size(); ++i) min_gap = std::min(min_gap, roots[i + 1] - roots[i]);
  if (!(min_gap > separation_tol))
    raise(ErrorCode::DuplicateRoot, "roots closer than the separation tolerance");
  RootSet out;
  out.roots = std::move(roots);
  out.min_gap = min_gap;
  return out;
}

NormalizedPolynomial from_roots(const std::vector<double>& roots, double separation_tol) {
  const int n = static_cast<int>(roots.size());
  if (n < 2) raise(ErrorCode::DegreeTooSmall, "need at least two roots");
  check_finite(roots, "roots");
  const double tol = separation_tol < 0 ? default_separation_tol(roots) : separation_tol;
  make_root_set(roots, tol);  // separation guard

  // incremental expansion of prod (X - q_i) in long double
  std::vector<ld> c{1.0L};
  for (double q : roots) {
    c.push_back(0.0L);
    for (size_t j = c.size() - 1; j >= 1; --j) c[j] -= static_cast<ld>(q) * c[j - 1];
  }
  std::vector<double> monic(c.begin(), c.end());
  return from_monic(monic);
}

std::vector<double> to_monic(const NormalizedPolynomial& q) {
  const int n = q.degree;
  std::vector<double> a(static_cast<size_t>(n) + 1, 0.0);
  a[0] = 1.0;
  for (int k = 1; k <= n - 1; ++k) a[k] = sign_pm(k) * (n - k + 1) * q.p[static_cast<size_t>(k) - 1];
  a[n] = sign_pm(n) * q.psq;
  return a;
}

NormalizedPolynomial from_monic(const std::vector<double>& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  if (n < 2) raise(ErrorCode::DegreeTooSmall, "monic coefficient list must have degree >= 2");
  check_finite(monic, "monic coefficients");
  if (std::abs(monic[0] - 1.0) > 1e-12)
    raise(ErrorCode::InvalidArgument, "leading coefficient must be 1");
  std::vector<double> p(static_cast<size_t>(n) - 1, 0.0);
  for (int k = 1; k <= n - 1; ++k)
    p[static_cast<size_t>(k) - 1] = sign_pm(k) * monic[k] / static_cast<double>(n - k + 1);
  const double psq = sign_pm(n) * monic[n];
  return NormalizedPolynomial(n, std::move(p), psq);
}

std::vector<double> taylor_shift(const std::vector<double>& monic, double c) {
  const int n = static_cast<int>(monic.size()) - 1;
  if (n < 0) raise(ErrorCode::InvalidArgument, "empty coefficient list");
  check_finite(monic, "monic coefficients");
  if (!std::isfinite(c)) raise(ErrorCode::NonFinite, "shift is non-finite");
  std::vector<ld> d(monic.begin(), monic.end());
  const ld cl = c;
  for (int pass = 0; pass < n; ++pass)
    for (int j = 1; j <= n - pass; ++j) d[j] += cl * d[j - 1];
  return std::vector<double>(d.begin(), d.end());
}

InvariantSet depress(const NormalizedPolynomial& q) {
  const int n = q.degree;
  const std::vector<double> b = taylor_shift(to_monic(q), q.p1());
  InvariantSet inv;
  inv.degree = n;
  inv.r.resize(static_cast<size_t>(std::max(0, n - 2)));
  for (int k = 2; k <= n - 1; ++k) inv.r[static_cast<size_t>(k) - 2] = sign_pm(k) * b[k];
  inv.r0 = sign_pm(n) * b[n];
  return inv;
}

long double psq_of_p1_ld(const InvariantSet& inv, long double p1) {
  return horner_ld(psq_coeffs(inv), p1);
}

double psq_of_p1(const InvariantSet& inv, double p1) {
  return static_cast<double>(psq_of_p1_ld(inv, p1));
}

double psq_derivative(const InvariantSet& inv, double p1, int order) {
  return static_cast<double>(psq_derivative_ld(inv, p1, order));
}

double coefficient_from_invariants(const InvariantSet& inv, double p1, int l) {
  const int n = inv.degree;
  if (l < 1 || l > n - 1)
    raise(ErrorCode::IndexOutOfRange, "coefficient ladder index l must satisfy 1 <= l <= n-1");
  ld fact = 1.0L;
  for (int i = 2; i <= l; ++i) fact *= i;
  return static_cast<double>(psq_derivative_ld(inv, p1, l) / (fact * static_cast<ld>(l + 1)));
}

double euler_shift_residual(const NormalizedPolynomial& q, double x) {
  if (!std::isfinite(x)) raise(ErrorCode::NonFinite, "shift argument is non-finite");
  const InvariantSet inv = depress(q);
  const int n = q.degree;
  const ld p1 = q.p1();
  ld acc = 0.0L;
  ld pow_term = 1.0L;  // (-x)^l / l!
  for (int l = 0; l <= n; ++l) {
    acc += pow_term * psq_derivative_ld(inv, p1, l);
    pow_term *= static_cast<ld>(-x) / static_cast<ld>(l + 1);
  }
  return static_cast<double>(acc);
}

}  // namespace polyflow

#include "polyflow/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace polyflow::oracle {

namespace {

using ld = long double;

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct StencilPoint {
  int offset;
  ld coeff;
};

// Central O(h^2) stencils for derivative orders 1..6; divide by h^order.
const std::vector<StencilPoint>& stencil(int order) {
  static const std::array<std::vector<StencilPoint>, 7> table = {{
      {},
      {{1, 0.5L}, {-1, -0.5L}},
      {{1, 1.0L}, {0, -2.0L}, {-1, 1.0L}},
      {{2, 0.5L}, {1, -1.0L}, {-1, 1.0L}, {-2, -0.5L}},
      {{2, 1.0L}, {1, -4.0L}, {0, 6.0L}, {-1, -4.0L}, {-2, 1.0L}},
      {{3, 0.5L}, {2, -2.0L}, {1, 2.5L}, {-1, -2.5L}, {-2, 2.0L}, {-3, -0.5L}},
      {{3, 1.0L}, {2, -6.0L}, {1, 15.0L}, {0, -20.0L}, {-1, 15.0L}, {-2, -6.0L}, {-3, 1.0L}},
  }};
  if (order < 1 || order > 6)
    raise(ErrorCode::IndexOutOfRange, "finite-difference stencils cover orders 1..6");
  return table[static_cast<size_t>(order)];
}

}  // namespace

MonicPolynomial expand_from_roots(const std::vector<double>& roots) {
  if (roots.empty()) raise(ErrorCode::InvalidArgument, "need at least one root");
  for (double q : roots)
    if (!std::isfinite(q)) raise(ErrorCode::NonFinite, "roots contain a non-finite value");
  std::vector<ld> c{1.0L};
  for (double q : roots) {
    c.push_back(0.0L);
    for (size_t j = c.size() - 1; j >= 1; --j) c[j] -= static_cast<ld>(q) * c[j - 1];
  }
  MonicPolynomial out;
  out.coeffs.assign(c.begin(), c.end());
  return out;
}

double eval(const MonicPolynomial& p, double x) {
  ld acc = 0.0L;
  for (double c : p.coeffs) acc = acc * x + c;
  return static_cast<double>(acc);
}

std::complex<double> eval(const MonicPolynomial& p, std::complex<double> z) {
  std::complex<double> acc(0.0, 0.0);
  for (double c : p.coeffs) acc = acc * z + c;
  return acc;
}

std::vector<std::complex<double>> durand_kerner(const MonicPolynomial& p, const DkOptions& opts) {
  const int n = p.degree();
  if (n < 1) raise(ErrorCode::InvalidArgument, "degree must be >= 1");
  for (double c : p.coeffs)
    if (!std::isfinite(c)) raise(ErrorCode::NonFinite, "coefficients contain a non-finite value");
  if (std::abs(p.coeffs[0] - 1.0) > 1e-12)
    raise(ErrorCode::InvalidArgument, "leading coefficient must be 1");
  if (n == 1) return {std::complex<double>(-p.coeffs[1], 0.0)};

  double maxc = 0.0;
  for (int k = 1; k <= n; ++k) maxc = std::max(maxc, std::abs(p.coeffs[static_cast<size_t>(k)]));
  const double radius0 = 1.0 + maxc;

  for (int attempt = 0; attempt <= opts.restarts; ++attempt) {
    const double radius = radius0 * std::pow(1.25, attempt);
    // irrational angular offset keeps the start away from real-axis symmetry traps
    const double offset = 0.7071067811865476 + 0.6180339887498949 * attempt;
    std::vector<std::complex<double>> z(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) {
      const double ang = kTwoPi * (j + 0.5) / n + offset;
      z[static_cast<size_t>(j)] = std::polar(radius, ang);
    }
    double best_move = std::numeric_limits<double>::infinity();
    std::vector<std::complex<double>> best_z = z;
    int stall = 0;
    for (int it = 0; it < opts.max_iter; ++it) {
      double move = 0.0, scale = 1.0;
      for (int j = 0; j < n; ++j) {
        const std::complex<double> num = eval(p, z[static_cast<size_t>(j)]);
        std::complex<double> den(1.0, 0.0);
        for (int k = 0; k < n; ++k)
          if (k != j) den *= z[static_cast<size_t>(j)] - z[static_cast<size_t>(k)];
        if (den == std::complex<double>(0.0, 0.0)) den = std::complex<double>(1e-300, 0.0);
        const std::complex<double> delta = num / den;
        z[static_cast<size_t>(j)] -= delta;
        move = std::max(move, std::abs(delta));
        scale = std::max(scale, std::abs(z[static_cast<size_t>(j)]));
      }
      if (move <= opts.tol * scale) return z;
      if (move < 0.5 * best_move) {
        best_move = move;
        best_z = z;
        stall = 0;
      } else if (++stall >= 30 && best_move <= 1e-8 * scale) {
        // displacement stopped shrinking at the rounding floor of this instance
        return best_z;
      }
    }
  }
  raise(ErrorCode::NoConvergence, "simultaneous root iteration did not converge");
}

RootClassification classify_roots(const MonicPolynomial& p, double imag_tol, double sep_tol) {
  const auto z = durand_kerner(p);
  RootClassification out;
  double max_re = 0.0;
  for (const auto& w : z) {
    out.max_imag = std::max(out.max_imag, std::abs(w.imag()));
    max_re = std::max(max_re, std::abs(w.real()));
    out.reals.push_back(w.real());
  }
  std::sort(out.reals.begin(), out.reals.end());
  bool separated = true;
  for (size_t i = 0; i + 1 < out.reals.size(); ++i)
    if (out.reals[i + 1] - out.reals[i] <= sep_tol) separated = false;
  out.all_real_simple = separated && out.max_imag <= imag_tol * (1.0 + max_re);
  return out;
}

std::vector<double> sorted_real_roots(const MonicPolynomial& p, double imag_tol) {
  RootClassification c = classify_roots(p, imag_tol, 0.0);
  double max_re = 0.0;
  for (double v : c.reals) max_re = std::max(max_re, std::abs(v));
  if (c.max_imag > imag_tol * (1.0 + max_re))
    raise(ErrorCode::InconsistentInit, "polynomial has non-real roots");
  return c.reals;
}

long double finite_diff_ld(const std::function<long double(long double)>& f, long double x0,
                           int order, long double h) {
  if (!(h > 0)) raise(ErrorCode::InvalidArgument, "step must be positive");
  const auto& st = stencil(order);
  ld acc = 0.0L;
  for (const auto& pt : st) acc += pt.coeff * f(x0 + pt.offset * h);
  ld hpow = 1.0L;
  for (int i = 0; i < order; ++i) hpow *= h;
  return acc / hpow;
}

double finite_diff(const std::function<double(double)>& f, double x0, int order, double h) {
  return static_cast<double>(finite_diff_ld(
      [&](long double x) { return static_cast<long double>(f(static_cast<double>(x))); },
      static_cast<long double>(x0), order, static_cast<long double>(h)));
}

double fd_step_hint(int order, double scale) {
  if (order < 1 || order > 6)
    raise(ErrorCode::IndexOutOfRange, "finite-difference stencils cover orders 1..6");
  // balance O(h^2) truncation against eps/h^order cancellation noise
  const double eps = 1.1e-19;  // long double unit roundoff
  return std::pow(eps, 1.0 / (order + 2)) * (scale > 0 ? scale : 1.0);
}

}  // namespace polyflow::oracle

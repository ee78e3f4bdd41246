#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "polyflow/error.hpp"

namespace polyflow::oracle {

// Reference-path utilities. Deliberately independent of the production solver
// so the two routes can be compared against each other in tests: expansion
// accumulates in long double, root finding iterates in complex arithmetic.

struct MonicPolynomial {
  std::vector<double> coeffs;  // descending powers, coeffs[0] == 1
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// prod_i (X - q_i), expanded by incremental convolution in long double.
MonicPolynomial expand_from_roots(const std::vector<double>& roots);

double eval(const MonicPolynomial& p, double x);
std::complex<double> eval(const MonicPolynomial& p, std::complex<double> z);

struct DkOptions {
  int max_iter = 1000;
  double tol = 1e-13;  // relative max displacement stop
  int restarts = 3;    // re-seeded attempts before giving up
};

/// Durand-Kerner simultaneous iteration from a circle with an irrational
/// angular offset. Throws NoConvergence if every attempt stalls.
std::vector<std::complex<double>> durand_kerner(const MonicPolynomial& p, const DkOptions& opts = {});

struct RootClassification {
  bool all_real_simple = false;
  std::vector<double> reals;  // real parts, ascending (always length degree)
  double max_imag = 0.0;
};

RootClassification classify_roots(const MonicPolynomial& p, double imag_tol, double sep_tol);

/// Ascending real parts of the Durand-Kerner roots; throws InconsistentInit if
/// any root has |imag| > imag_tol * (1 + max |real|).
std::vector<double> sorted_real_roots(const MonicPolynomial& p, double imag_tol = 1e-7);

/// Central finite-difference derivative of f at x0, orders 1..6 (O(h^2) stencils).
double finite_diff(const std::function<double(double)>& f, double x0, int order, double h);
long double finite_diff_ld(const std::function<long double(long double)>& f, long double x0,
                           int order, long double h);

/// Noise-balanced step size hint for order-k stencils of a smooth function
/// whose natural argument scale is `scale` (long-double evaluation assumed).
double fd_step_hint(int order, double scale);

}  // namespace polyflow::oracle

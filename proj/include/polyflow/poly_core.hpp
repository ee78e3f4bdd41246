#pragma once

#include <string>
#include <vector>

#include "polyflow/error.hpp"

namespace polyflow {

/// Degree-n real monic polynomial stored through its scaled coefficient vector.
/// The representation is
///   p(X) = X^n + sum_{k=1}^{n-1} (-1)^k (n-k+1) P_k X^{n-k} + (-1)^n P^2,
/// i.e. the elementary symmetric functions are e_k = (n-k+1) P_k for k < n and
/// e_n = P^2. `p` holds P_1..P_{n-1}; `psq` holds P^2. P_1 is the mean of the
/// roots and the translation parameter of the whole theory.
struct NormalizedPolynomial {
  int degree = 0;
  std::vector<double> p;  // P_1..P_{n-1}
  double psq = 0.0;       // P^2

  NormalizedPolynomial() = default;
  NormalizedPolynomial(int n, std::vector<double> coeffs, double psq_value);

  double p1() const { return p.front(); }
  /// 1-based access to P_k, k in [1, degree-1].
  double pk(int k) const;
};

/// Translation-invariant data of a NormalizedPolynomial: the coefficients of
/// its depressed form r(Y) = Y^n + sum_{k=2}^{n-1} (-1)^k R_k Y^{n-k} + (-1)^n R_0
/// obtained by shifting X = Y + P_1. There is no R_1 (the shift kills it).
struct InvariantSet {
  int degree = 0;
  double r0 = 0.0;        // R_0
  std::vector<double> r;  // R_2..R_{n-1} (empty for degree 2)

  /// 2-based access to R_k, k in [2, degree-1].
  double rk(int k) const;
};

/// Strictly increasing simple real roots.
struct RootSet {
  std::vector<double> roots;
  double min_gap = 0.0;
};

/// Roots of a depressed polynomial; they sum to zero.
struct DepressedRootSet {
  std::vector<double> y;  // ascending
};

/// Sorts, checks pairwise separation (> separation_tol), computes min_gap.
/// Throws DuplicateRoot on a violated gap, DegreeTooSmall for < 2 roots.
RootSet make_root_set(std::vector<double> roots, double separation_tol);

/// Default separation tolerance: 1e-7 * (1 + max |root|).
double default_separation_tol(const std::vector<double>& roots);

/// Builds the scaled-coefficient representation from real simple roots.
/// separation_tol < 0 selects the default scale-aware tolerance.
NormalizedPolynomial from_roots(const std::vector<double>& roots, double separation_tol = -1.0);

/// Monic coefficients in descending powers, length degree+1, leading 1.
std::vector<double> to_monic(const NormalizedPolynomial& q);

/// Inverse of to_monic. Requires a (numerically) monic input of degree >= 2.
NormalizedPolynomial from_monic(const std::vector<double>& monic);

/// Coefficients of p(Y + c) for monic descending coefficients of p, via
/// repeated synthetic division (long double accumulation).
std::vector<double> taylor_shift(const std::vector<double>& monic, double c);

/// Depressed-form invariants of q (shift by its own P_1).
InvariantSet depress(const NormalizedPolynomial& q);

/// The identity polynomial of the theory evaluated at t:
///   psq(t) = t^n + sum_{k=2}^{n-1} R_k t^{n-k} + R_0.
/// At t = P_1 of the originating polynomial it reproduces P^2.
double psq_of_p1(const InvariantSet& inv, double p1);
long double psq_of_p1_ld(const InvariantSet& inv, long double p1);

/// order-th derivative of psq(.) at p1; order 0 is psq itself, order > degree is 0,
/// order == degree is exactly degree!.
double psq_derivative(const InvariantSet& inv, double p1, int order);

/// Recovers the scaled coefficient P_{n-l} from the invariants and P_1 via the
/// derivative ladder (l+1) P_{n-l} = (1/l!) d^l psq / dP_1^l. Requires 1 <= l <= degree-1.
double coefficient_from_invariants(const InvariantSet& inv, double p1, int l);

/// Truncated exponential-shift sum
///   sum_{l=0}^{n} ((-x)^l / l!) d^l psq / dP_1^l,
/// which collapses to prod_i (q_i - x); it vanishes exactly at every root.
double euler_shift_residual(const NormalizedPolynomial& q, double x);

// ---- serialization (JSON object and one-line CSV) ----
// Round trips are bit-identical for finite doubles. Non-finite values are
// rejected with NonFinite; malformed text raises SchemaError.

std::string to_json(const NormalizedPolynomial& q);
NormalizedPolynomial poly_from_json(const std::string& text);

std::string to_csv(const NormalizedPolynomial& q);
NormalizedPolynomial poly_from_csv(const std::string& line);

/// Shortest round-trip decimal for a finite double (std::to_chars).
std::string format_double(double v);
/// Exact parse; raises SchemaError on trailing garbage or NonFinite values.
double parse_double(const std::string& text);

}  // namespace polyflow

#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <vector>

#include "rsvd/error.hpp"
#include "rsvd/invariant.hpp"

namespace rsvd {

// --- pullback families, functions of the action variables only ---

// M_k(q): sum of cosh(q_{eps J}) over signed subsets with |J| = k.
Real eval_M(int k, std::span<const Real> q);

// cH_l(q) = sum_{k<=l} (-2)^{l-k} C(n-k, l-k) M_k(q); equals
// 4^l e_l(sinh^2(q_1/2), ..., sinh^2(q_n/2)).
Real eval_cH(int l, std::span<const Real> q);

// cK_m(q) = (-1)^m sum_a C(n-(m-2a), a) M_{m-2a}(q); equals
// (-1)^m e_m of the 2n-point spectrum {e^{q_k}} U {e^{-q_k}}.
Real eval_cK(int m, std::span<const Real> q);

// Elementary symmetric polynomial e_l via the coefficient recurrence.
Real elem_sym(std::span<const Real> values, int l);

// --- exact integer layer ---

// C(a, b) as a big integer; zero whenever a < 0, b < 0 or b > a
// (in particular C(-1,-1) = 0).
mpz_class binom(long a, long b);

enum class CoeffFlavor {
  Forward,  // entry (j,k) = C(A,B) + C(A-1,B-1), A = 2n-j-k, B = j-k
  Inverse,  // entry (j,k) = C(2(n-k), j-k)
};

// Lower-triangular (l+1)x(l+1) integer matrix with unit diagonal realizing
// the linear relation between the two invariant families. The Forward
// entries are an exact rewriting of the rational form
// 2(n-k) / (2(n-k)-(j-k)) * C(2n-j-k, j-k), which is checked against it in
// exact rational arithmetic wherever the denominator is nonzero (the j=k=n
// corner is 0/0 and is defined through the integer form, giving 1).
struct ExactCoeffMatrix {
  int n = 0;
  int l = 0;
  CoeffFlavor flavor = CoeffFlavor::Forward;
  std::vector<std::vector<mpz_class>> entries;

  const mpz_class& at(int j, int k) const { return entries[j][k]; }
};

ExactCoeffMatrix coeff_matrix(int n, int l, CoeffFlavor flavor);

// --- the invertible transform between the families ---

// (-1)^l H_l = sum_k Forward(l,k) K_k; input spectral values K_0..K_l,
// output van Diejen values H_0..H_l. Valid verbatim at phase points.
InvariantVector vd_from_lax(const InvariantVector& K, int n);

// (-1)^m K_m = sum_l C(2(n-l), m-l) H_l.
InvariantVector lax_from_vd(const InvariantVector& H, int n);

// --- recursions in the number of variables ---

// Residuals of
//   cH_l(q, x) = cH_l(q) + 4 sinh^2(x/2) cH_{l-1}(q)
//   cK_k(q, x) = cK_k(q) - 2 cosh(x) cK_{k-1}(q) + cK_{k-2}(q)
// with the out-of-range members treated as zero.
struct RecursionReport {
  std::vector<double> h_resid;  // index l = 0..n
  std::vector<double> k_resid;  // index k = 0..n

  double max_residual() const;
};

RecursionReport verify_recursions(std::span<const Real> q, Real q_extra);

// --- exact identity sweeps ---

struct IdentityCheck {
  std::string identity;
  std::string detail;
  long cells = 0;
};

struct IdentityReport {
  int n_max = 0;
  std::vector<IdentityCheck> checks;
  std::vector<std::string> failures;  // empty: the sweep throws on the first counterexample

  long cells_checked() const;
};

// Exact verification, for every n <= n_max, of
//  - the signed-subset weight sum collapsing to 2^{l-|J|} (big rationals),
//  - the coefficient-matrix recursion step as a matrix identity over
//    polynomials in the indeterminate X = 2 cosh(alpha), entrywise equal to
//    the five-term binomial identity with A = 2n-j-k, B = j-k,
//  - the exact inverse pair D A(n) D B(n) = 1 with D = diag((-1)^j).
// Throws IdentityFailure with the first counterexample (which must never
// happen); returns the tally of verified cells.
IdentityReport verify_exact_identities(int n_max);

namespace eq_detail {

Real mpz_to_real(const mpz_class& z);
Real binom_real(long a, long b);

}  // namespace eq_detail

}  // namespace rsvd

#pragma once

#include <vector>

#include "rsvd/domain.hpp"
#include "rsvd/lax.hpp"

namespace rsvd {

inline constexpr double kPairingTol = 1e-8;           // |l * l_paired - 1|
inline constexpr double kDegenerateActionTol = 1e-8;  // smallest admissible action
inline constexpr double kPalindromeTol = 1e-10;

// Coefficients of det(L - x 1) = sum_m K_m x^{2n-m}. All 2n+1 entries are
// kept so the palindrome K_{2n-m} = K_m stays a testable statement rather
// than an assumption baked into the layout.
struct CharPolyCoeffs {
  int n = 0;
  std::vector<Real> K;  // length 2n+1, K[0] = 1

  int dim() const { return 2 * n; }
};

// Spectrum of the (Hermitian) Lax matrix, ascending.
std::vector<Real> hermitian_eigenvalues(const LaxMatrix& lax);

// Eigenvalue route: K_m = (-1)^m e_m(spectrum), coefficients built by
// sequential multiplication of monic linear factors.
CharPolyCoeffs char_poly_eigen(const LaxMatrix& lax);

// Faddeev-LeVerrier route: matrix products and traces only, hence usable
// with dual-number scalars; kept as an independent cross-check of the
// eigenvalue route.
CharPolyCoeffs char_poly_leverrier(const LaxMatrix& lax);

// Actions from the spectrum: eigenvalues pair multiplicatively as (l, 1/l);
// q_k = log of the k-th largest eigenvalue, strictly decreasing.
ActionVector extract_actions(const LaxMatrix& lax);

namespace spectral_detail {

// det(x 1 - M) = sum_k c_k x^{N-k}; returns (c_0 .. c_N) real parts with the
// max imaginary residual of the trace accumulations in *imag_resid.
template <class R>
std::vector<R> leverrier(const CMat<R>& M, double* imag_resid) {
  const int N = M.n;
  std::vector<R> c(N + 1);
  c[0] = R(1);
  *imag_resid = 0.0;

  CMat<R> aux = CMat<R>::identity(N);
  for (int k = 1; k <= N; ++k) {
    aux = M * aux;
    const cx<R> t = trace(aux);
    const cx<R> ck = -t / cx<R>(R(k));
    const double re = scalar_value(ck.re);
    const double im = scalar_value(ck.im);
    const double resid = std::abs(im) / (1.0 + std::abs(re));
    if (resid > *imag_resid) *imag_resid = resid;
    c[k] = ck.re;
    add_scalar_diag(aux, ck);
  }
  return c;
}

}  // namespace spectral_detail

}  // namespace rsvd

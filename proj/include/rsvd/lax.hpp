#pragma once

#include <cmath>
#include <vector>

#include "rsvd/cmatrix.hpp"
#include "rsvd/domain.hpp"

namespace rsvd {

// Bound on the structural residuals (involution relations, unit determinants,
// Hermiticity) checked after every construction.
inline constexpr double kStructuralTol = 1e-10;

struct LaxFactors {
  int n = 0;
  CMat<Real> C;                // antidiagonal block involution
  CMat<Real> h;                // position-dependent Hermitian factor
  CMat<Real> A;                // momentum-dependent Hermitian core
  std::vector<cx<Real>> z;     // n auxiliary products
  std::vector<cx<Real>> F;     // 2n vector, |F_l|^2 = e^{-theta_l} |z_l|
  std::vector<Real> Lambda;    // diag(lambda, -lambda)
};

struct LaxMatrix {
  int n = 0;
  CMat<Real> L;  // 2n x 2n Hermitian, CLC = L^{-1}, det = 1
};

namespace lax_detail {

// Conjugation by the half-swap involution C is an index permutation,
// so h^{-1} = C h C and the other inverses come for free.
template <class R>
CMat<R> conj_by_C(const CMat<R>& M) {
  const int dim = M.n;
  const int n = dim / 2;
  CMat<R> out(dim);
  auto swap_half = [n](int i) { return i < n ? i + n : i - n; };
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) out(i, j) = M(swap_half(i), swap_half(j));
  return out;
}

template <class R>
struct Factors {
  CMat<R> h, A;
  std::vector<cx<R>> z, F;
  std::vector<R> Lambda;
};

template <class R>
Factors<R> build_factors_kernel(const R* lambda, const R* theta, int n, const Params& par) {
  using std::exp;
  using std::sqrt;

  Factors<R> f;
  const int dim = 2 * n;
  f.h = CMat<R>(dim);
  f.A = CMat<R>(dim);
  f.z.resize(n);
  f.F.resize(dim);
  f.Lambda.resize(dim);

  // a(x) = sqrt(x + sqrt(x^2 + kappa^2)) / sqrt(2x),
  // b(x) = i kappa / (sqrt(2x) sqrt(x + sqrt(x^2 + kappa^2))),
  // kept in this closed form; the chamber guarantees x > 0.
  const R kap = R(par.kappa);
  for (int l = 0; l < n; ++l) {
    const R x = lambda[l];
    const R root = sqrt(x + sqrt(x * x + kap * kap));
    const R s2x = sqrt(R(2) * x);
    const R a = root / s2x;
    const R b_im = kap / (s2x * root);
    f.h(l, l) = cx<R>(a);
    f.h(n + l, n + l) = cx<R>(a);
    f.h(l, n + l) = cx<R>(R(0), b_im);
    f.h(n + l, l) = cx<R>(R(0), -b_im);
  }

  for (int l = 0; l < n; ++l) {
    cx<R> z(R(1), R(par.nu) / lambda[l]);
    for (int m = 0; m < n; ++m) {
      if (m == l) continue;
      z *= cx<R>(R(1), R(par.mu) / (lambda[l] - lambda[m]));
      z *= cx<R>(R(1), R(par.mu) / (lambda[l] + lambda[m]));
    }
    f.z[l] = -z;
  }

  for (int l = 0; l < n; ++l) {
    const R fl = exp(R(-0.5) * theta[l]) * sqrt(abs(f.z[l]));
    f.F[l] = cx<R>(fl);
    f.F[n + l] = conj(f.z[l]) / fl;
  }

  for (int j = 0; j < n; ++j) {
    f.Lambda[j] = lambda[j];
    f.Lambda[n + j] = -lambda[j];
  }

  const cx<R> i_mu(R(0), R(par.mu));
  const cx<R> i_md(R(0), R(par.mu) - R(2) * R(par.nu));
  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) {
      cx<R> num = i_mu * f.F[j] * conj(f.F[k]);
      if ((j + n == k) || (k + n == j)) num += i_md;  // C_{jk} = 1 on the swapped pair
      const cx<R> den(f.Lambda[j] - f.Lambda[k], R(par.mu));
      f.A(j, k) = num / den;
    }
  return f;
}

template <class R>
CMat<R> assemble_lax(const Factors<R>& f) {
  const CMat<R> h_inv = conj_by_C(f.h);
  return h_inv * f.A * h_inv;
}

}  // namespace lax_detail

LaxFactors build_factors(const PhasePoint& point, const Params& par);

// h^{-1} A h^{-1} with h^{-1} = C h C; throws StructuralResidual if the
// involution, Hermiticity or unit-determinant residuals exceed kStructuralTol
// (that signals an implementation bug, not bad user input).
LaxMatrix build_lax(const PhasePoint& point, const Params& par);

struct StructuralReport {
  double chch = 0, caca = 0, clcl = 0;        // ||C X C X - 1||_max
  double herm_h = 0, herm_a = 0, herm_l = 0;  // ||X - X^dagger||_max
  double det_h = 0, det_a = 0, det_l = 0;     // |det X - 1|

  double max_residual() const;
};

StructuralReport structural_residuals(const LaxFactors& f, const LaxMatrix& lax);

// |det M - 1| via LU; exposed for tests.
double det_unit_residual(const CMat<Real>& M);

}  // namespace rsvd

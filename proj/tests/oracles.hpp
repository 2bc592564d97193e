#pragma once

// Independent oracles for the unit and acceptance tests. Everything here is
// a deliberately plain transcription in std::complex<double> arithmetic,
// sharing no code with the library kernels.

#include <cmath>
#include <complex>
#include <vector>

#include "rsvd/domain.hpp"

namespace oracle {

using cd = std::complex<double>;

inline cd v_fn(double x, double mu) { return cd(x, mu) / cd(x, 0.0); }

inline cd w_fn(double x, double nu, double kappa) {
  return cd(x, nu) / cd(x, 0.0) * (cd(x, kappa) / cd(x, 0.0));
}

// V_{eps J; K} as a complex product, no pairing tricks.
inline cd V_block(const std::vector<int>& idx, const std::vector<int>& sgn,
                  const std::vector<int>& K, const std::vector<double>& lam,
                  const rsvd::Params& par) {
  cd prod = 1.0;
  const int j = static_cast<int>(idx.size());
  for (int a = 0; a < j; ++a) prod *= w_fn(sgn[a] * lam[idx[a]], par.nu, par.kappa);
  for (int a = 0; a < j; ++a)
    for (int b = a + 1; b < j; ++b) {
      const cd f = v_fn(sgn[a] * lam[idx[a]] + sgn[b] * lam[idx[b]], par.mu);
      prod *= f * f;
    }
  for (int a = 0; a < j; ++a)
    for (int k : K) {
      prod *= v_fn(sgn[a] * lam[idx[a]] + lam[k], par.mu);
      prod *= v_fn(sgn[a] * lam[idx[a]] - lam[k], par.mu);
    }
  return prod;
}

// U_{K,p} as a complex signed sum over p-subsets of K.
inline cd U_block(const std::vector<int>& K, int p, const std::vector<double>& lam,
                  const rsvd::Params& par) {
  if (p == 0) return 1.0;
  cd acc = 0.0;
  const int ksz = static_cast<int>(K.size());
  std::vector<int> comb(p);
  for (int i = 0; i < p; ++i) comb[i] = i;
  while (true) {
    std::vector<char> in_I(ksz, 0);
    for (int i = 0; i < p; ++i) in_I[comb[i]] = 1;
    for (int mask = 0; mask < (1 << p); ++mask) {
      std::vector<double> x(p);
      for (int i = 0; i < p; ++i)
        x[i] = ((mask >> (p - 1 - i)) & 1) ? -lam[K[comb[i]]] : lam[K[comb[i]]];
      cd prod = 1.0;
      for (int i = 0; i < p; ++i) prod *= w_fn(x[i], par.nu, par.kappa);
      for (int i = 0; i < p; ++i)
        for (int j2 = i + 1; j2 < p; ++j2)
          prod *= v_fn(x[i] + x[j2], par.mu) * v_fn(-x[i] - x[j2], par.mu);
      for (int i = 0; i < p; ++i)
        for (int b = 0; b < ksz; ++b) {
          if (in_I[b]) continue;
          prod *= v_fn(x[i] + lam[K[b]], par.mu) * v_fn(x[i] - lam[K[b]], par.mu);
        }
      acc += prod;
    }
    int i = p - 1;
    while (i >= 0 && comb[i] == ksz - p + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j2 = i + 1; j2 < p; ++j2) comb[j2] = comb[j2 - 1] + 1;
  }
  return (p % 2 ? -1.0 : 1.0) * acc;
}

// H_l literally: cosh(theta_{eps J}) sqrt(V_{eps J} V_{-eps J}) U_{J^c, l-|J|},
// with the square root taken as the principal complex root of the product.
inline double H_l(int l, const rsvd::PhasePoint& pt, const rsvd::Params& par,
                  double* imag_resid = nullptr) {
  const int n = pt.n();
  cd acc = 0.0;
  for (const auto& J : rsvd::enumerate_signed_subsets(n, l)) {
    std::vector<int> K;
    for (int i = 0, a = 0; i < n; ++i) {
      if (a < J.size() && J.indices[a] == i)
        ++a;
      else
        K.push_back(i);
    }
    double th = 0.0;
    for (int i = 0; i < J.size(); ++i) th += J.signs[i] * pt.theta[J.indices[i]];
    std::vector<int> neg(J.signs);
    for (int& s : neg) s = -s;
    const cd VV = V_block(J.indices, J.signs, K, pt.lambda, par) *
                  V_block(J.indices, neg, K, pt.lambda, par);
    acc += std::cosh(th) * std::sqrt(VV) * U_block(K, l - J.size(), pt.lambda, par);
  }
  if (imag_resid) *imag_resid = std::abs(acc.imag()) / (1.0 + std::abs(acc.real()));
  return acc.real();
}

// Elementary symmetric polynomial by direct subset enumeration.
inline double e_direct(const std::vector<double>& x, int m) {
  const int n = static_cast<int>(x.size());
  if (m == 0) return 1.0;
  if (m > n) return 0.0;
  double acc = 0.0;
  std::vector<int> comb(m);
  for (int i = 0; i < m; ++i) comb[i] = i;
  while (true) {
    double prod = 1.0;
    for (int i = 0; i < m; ++i) prod *= x[comb[i]];
    acc += prod;
    int i = m - 1;
    while (i >= 0 && comb[i] == n - m + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
  }
  return acc;
}

// Richardson-extrapolated central difference along one coordinate.
template <class F>
double central_diff(F f, double x0, double h = 1e-5) {
  auto d = [&](double hh) { return (f(x0 + hh) - f(x0 - hh)) / (2.0 * hh); };
  return (4.0 * d(h / 2.0) - d(h)) / 3.0;
}

}  // namespace oracle

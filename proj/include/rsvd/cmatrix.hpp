#pragma once

#include <cmath>
#include <vector>

#include "rsvd/cx.hpp"

namespace rsvd {

// Dense square complex matrix, row-major. Sized for 2n x 2n Lax matrices
// (n <= 10 or so); no attempt at blocked kernels.
template <class R>
struct CMat {
  int n = 0;
  std::vector<cx<R>> a;

  CMat() = default;
  explicit CMat(int dim) : n(dim), a(static_cast<std::size_t>(dim) * dim) {}

  static CMat identity(int dim) {
    CMat m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = cx<R>(R(1));
    return m;
  }

  cx<R>& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  const cx<R>& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

template <class R>
CMat<R> operator*(const CMat<R>& A, const CMat<R>& B) {
  CMat<R> C(A.n);
  for (int i = 0; i < A.n; ++i)
    for (int k = 0; k < A.n; ++k) {
      const cx<R> aik = A(i, k);
      for (int j = 0; j < A.n; ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

template <class R>
CMat<R> operator+(const CMat<R>& A, const CMat<R>& B) {
  CMat<R> C(A.n);
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.a[i] + B.a[i];
  return C;
}

template <class R>
CMat<R> operator-(const CMat<R>& A, const CMat<R>& B) {
  CMat<R> C(A.n);
  for (std::size_t i = 0; i < C.a.size(); ++i) C.a[i] = A.a[i] - B.a[i];
  return C;
}

template <class R>
cx<R> trace(const CMat<R>& A) {
  cx<R> t{};
  for (int i = 0; i < A.n; ++i) t += A(i, i);
  return t;
}

template <class R>
void add_scalar_diag(CMat<R>& A, const cx<R>& s) {
  for (int i = 0; i < A.n; ++i) A(i, i) += s;
}

// Max entrywise modulus, as double (residual reporting).
template <class R>
double max_abs(const CMat<R>& A) {
  double m = 0.0;
  for (const auto& e : A.a) {
    const double v = std::sqrt(scalar_value(norm2(e)));
    if (v > m) m = v;
  }
  return m;
}

template <class R>
double max_abs_diff(const CMat<R>& A, const CMat<R>& B) {
  double m = 0.0;
  for (std::size_t i = 0; i < A.a.size(); ++i) {
    const auto d = A.a[i] - B.a[i];
    const double v = std::sqrt(scalar_value(norm2(d)));
    if (v > m) m = v;
  }
  return m;
}

// ||A - A^dagger||_max
template <class R>
double hermiticity_residual(const CMat<R>& A) {
  double m = 0.0;
  for (int i = 0; i < A.n; ++i)
    for (int j = 0; j < A.n; ++j) {
      const auto d = A(i, j) - conj(A(j, i));
      const double v = std::sqrt(scalar_value(norm2(d)));
      if (v > m) m = v;
    }
  return m;
}

}  // namespace rsvd

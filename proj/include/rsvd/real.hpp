#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rsvd {

// Extended-precision working scalar. The invariant families involve
// alternating sums whose terms can exceed the result by several orders of
// magnitude; 80-bit accumulation keeps those residuals well below the
// verification tolerances.
using Real = long double;

// Fixed-order pairwise reduction. The summation tree depends only on the
// number of terms, so parallel producers that fill `terms` by index yield
// run-to-run identical results regardless of thread count.
template <class T>
T pairwise_sum(std::span<const T> terms) {
  const std::size_t n = terms.size();
  if (n == 0) return T(0);
  if (n <= 8) {
    T acc = terms[0];
    for (std::size_t i = 1; i < n; ++i) acc = acc + terms[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(terms.subspan(0, half)) + pairwise_sum(terms.subspan(half));
}

template <class T>
T pairwise_sum(const std::vector<T>& terms) {
  return pairwise_sum(std::span<const T>(terms));
}

inline std::vector<Real> to_real(const std::vector<double>& x) {
  return std::vector<Real>(x.begin(), x.end());
}

inline std::vector<double> to_double(const std::vector<Real>& x) {
  return std::vector<double>(x.begin(), x.end());
}

// |a - b| scaled by 1 + max(|a|,|b|); the uniform meaning of "relative
// residual" across the verification suites.
template <class T>
double rel_resid(T a, T b) {
  const T d = a > b ? a - b : b - a;
  T ma = a < T(0) ? -a : a;
  T mb = b < T(0) ? -b : b;
  const T m = ma > mb ? ma : mb;
  return static_cast<double>(d / (T(1) + m));
}

}  // namespace rsvd

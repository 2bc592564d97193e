#pragma once

#include <cmath>

#include "rsvd/dual.hpp"

namespace rsvd {

// Complex number over a generic real scalar. std::complex is only specified
// for the builtin floating types, and the Lax construction has to run over
// dual numbers as well, so we carry our own minimal type.
template <class R>
struct cx {
  R re{};
  R im{};

  cx() = default;
  cx(R r) : re(r) {}
  cx(R r, R i) : re(r), im(i) {}
};

template <class R>
cx<R> operator+(const cx<R>& a, const cx<R>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class R>
cx<R> operator-(const cx<R>& a, const cx<R>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class R>
cx<R> operator-(const cx<R>& a) {
  return {-a.re, -a.im};
}
template <class R>
cx<R> operator*(const cx<R>& a, const cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
cx<R> operator*(const cx<R>& a, R s) {
  return {a.re * s, a.im * s};
}
template <class R>
cx<R> operator*(R s, const cx<R>& a) {
  return a * s;
}
template <class R>
cx<R> operator/(const cx<R>& a, R s) {
  return {a.re / s, a.im / s};
}
template <class R>
cx<R> operator/(const cx<R>& a, const cx<R>& b) {
  const R n2 = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
}
template <class R>
cx<R>& operator+=(cx<R>& a, const cx<R>& b) {
  return a = a + b;
}
template <class R>
cx<R>& operator*=(cx<R>& a, const cx<R>& b) {
  return a = a * b;
}

template <class R>
cx<R> conj(const cx<R>& a) {
  return {a.re, -a.im};
}
template <class R>
R norm2(const cx<R>& a) {
  return a.re * a.re + a.im * a.im;
}
template <class R>
R abs(const cx<R>& a) {
  using std::sqrt;
  return sqrt(norm2(a));
}

}  // namespace rsvd

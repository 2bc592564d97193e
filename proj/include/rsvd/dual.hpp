#pragma once

#include <cmath>

namespace rsvd {

// Forward-mode dual number: value plus derivative along one seeded direction.
// Gradients of the Hamiltonian families are assembled by re-evaluating with
// the seed moved across coordinates, which is exact to rounding (no step-size
// truncation as with finite differences).
struct Dual {
  double v = 0.0;
  double d = 0.0;

  Dual() = default;
  Dual(double value) : v(value) {}  // constants carry zero derivative
  Dual(double value, double deriv) : v(value), d(deriv) {}
};

inline Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(Dual a) { return {-a.v, -a.d}; }
inline Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(Dual a, Dual b) {
  const double q = a.v / b.v;
  return {q, (a.d - q * b.d) / b.v};
}

inline Dual& operator+=(Dual& a, Dual b) { return a = a + b; }
inline Dual& operator-=(Dual& a, Dual b) { return a = a - b; }
inline Dual& operator*=(Dual& a, Dual b) { return a = a * b; }
inline Dual& operator/=(Dual& a, Dual b) { return a = a / b; }

inline bool operator==(Dual a, Dual b) { return a.v == b.v; }
inline bool operator!=(Dual a, Dual b) { return a.v != b.v; }
inline bool operator<(Dual a, Dual b) { return a.v < b.v; }
inline bool operator<=(Dual a, Dual b) { return a.v <= b.v; }
inline bool operator>(Dual a, Dual b) { return a.v > b.v; }
inline bool operator>=(Dual a, Dual b) { return a.v >= b.v; }

inline Dual sqrt(Dual x) {
  const double s = std::sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}
inline Dual exp(Dual x) {
  const double e = std::exp(x.v);
  return {e, x.d * e};
}
inline Dual log(Dual x) { return {std::log(x.v), x.d / x.v}; }
inline Dual cosh(Dual x) { return {std::cosh(x.v), x.d * std::sinh(x.v)}; }
inline Dual sinh(Dual x) { return {std::sinh(x.v), x.d * std::cosh(x.v)}; }
inline Dual tanh(Dual x) {
  const double t = std::tanh(x.v);
  return {t, x.d * (1.0 - t * t)};
}
inline Dual fabs(Dual x) { return x.v < 0.0 ? -x : x; }
inline Dual abs(Dual x) { return fabs(x); }

// Plain value of a possibly-dual scalar, for residual checks in generic code.
inline double scalar_value(Dual x) { return x.v; }
inline double scalar_value(double x) { return x; }
inline double scalar_value(long double x) { return static_cast<double>(x); }
#ifdef __SIZEOF_FLOAT128__
inline double scalar_value(__float128 x) { return static_cast<double>(x); }
#endif

}  // namespace rsvd

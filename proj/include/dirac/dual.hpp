#pragma once

// Forward-mode dual numbers: a + b·ε with ε² = 0. The ε part carries a single
// directional derivative; gradients are assembled one seed direction at a time.

#include <cmath>
#include <ostream>

namespace dirac {

struct Dual {
  double v = 0.0;  // value
  double d = 0.0;  // derivative along the seeded direction

  constexpr Dual() = default;
  constexpr Dual(double value) : v(value) {}  // NOLINT: implicit constants are intended
  constexpr Dual(double value, double deriv) : v(value), d(deriv) {}

  constexpr Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  constexpr Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  constexpr Dual& operator*=(const Dual& o) { d = d * o.v + v * o.d; v *= o.v; return *this; }
  constexpr Dual& operator/=(const Dual& o) {
    d = (d * o.v - v * o.d) / (o.v * o.v);
    v /= o.v;
    return *this;
  }
};

constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }
constexpr Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
constexpr Dual operator+(const Dual& a) { return a; }

constexpr bool operator<(const Dual& a, const Dual& b) { return a.v < b.v; }
constexpr bool operator>(const Dual& a, const Dual& b) { return a.v > b.v; }
constexpr bool operator<=(const Dual& a, const Dual& b) { return a.v <= b.v; }
constexpr bool operator>=(const Dual& a, const Dual& b) { return a.v >= b.v; }

inline Dual sqrt(const Dual& a) {
  const double s = std::sqrt(a.v);
  return {s, a.d / (2.0 * s)};
}
inline Dual exp(const Dual& a) {
  const double e = std::exp(a.v);
  return {e, a.d * e};
}
inline Dual log(const Dual& a) { return {std::log(a.v), a.d / a.v}; }
inline Dual sin(const Dual& a) { return {std::sin(a.v), a.d * std::cos(a.v)}; }
inline Dual cos(const Dual& a) { return {std::cos(a.v), -a.d * std::sin(a.v)}; }
inline Dual sinh(const Dual& a) { return {std::sinh(a.v), a.d * std::cosh(a.v)}; }
inline Dual cosh(const Dual& a) { return {std::cosh(a.v), a.d * std::sinh(a.v)}; }
inline Dual abs(const Dual& a) { return a.v < 0.0 ? -a : a; }

// Real exponent. d/dx x^p = p x^(p-1); the p == 0 branch avoids 0 * inf at x = 0.
inline Dual pow(const Dual& a, double p) {
  if (p == 0.0) return {1.0, 0.0};
  const double head = std::pow(a.v, p - 1.0);
  return {head * a.v, a.d * p * head};
}

inline bool isfinite(const Dual& a) { return std::isfinite(a.v) && std::isfinite(a.d); }

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

/// x^n for small non-negative integer n, usable for both double and Dual.
template <class T>
T ipow(const T& x, unsigned n) {
  T result(1.0);
  T base = x;
  while (n != 0) {
    if (n & 1U) result *= base;
    base *= base;
    n >>= 1U;
  }
  return result;
}

inline std::ostream& operator<<(std::ostream& os, const Dual& a) {
  return os << a.v << " + " << a.d << "e";
}

}  // namespace dirac

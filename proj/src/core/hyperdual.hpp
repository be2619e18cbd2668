// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

namespace curv {

// Second-order forward-mode number: carries two independent first-order
// perturbations and their mixed product, so one evaluation of f yields
// f, two directional derivatives, and one mixed second derivative.
struct Dual {
  double f{0.0};
  double d1{0.0};
  double d2{0.0};
  double d12{0.0};

  Dual() = default;
  Dual(double value) : f(value) {}
  Dual(double value, double e1, double e2, double e12)
      : f(value), d1(e1), d2(e2), d12(e12) {}
};

inline Dual operator+(const Dual& a, const Dual& b) {
  return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d12 + b.d12};
}
inline Dual operator-(const Dual& a, const Dual& b) {
  return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d12 - b.d12};
}
inline Dual operator-(const Dual& a) { return {-a.f, -a.d1, -a.d2, -a.d12}; }
inline Dual operator*(const Dual& a, const Dual& b) {
  return {a.f * b.f,
          a.f * b.d1 + a.d1 * b.f,
          a.f * b.d2 + a.d2 * b.f,
          a.f * b.d12 + a.d1 * b.d2 + a.d2 * b.d1 + a.d12 * b.f};
}

// Lifts a scalar function through the chain rule: needs u(x), u'(x), u''(x).
inline Dual chain(const Dual& x, double u, double du, double ddu) {
  return {u, du * x.d1, du * x.d2, du * x.d12 + ddu * x.d1 * x.d2};
}

inline Dual inverse(const Dual& x) {
  const double inv = 1.0 / x.f;
  return chain(x, inv, -inv * inv, 2.0 * inv * inv * inv);
}
inline Dual operator/(const Dual& a, const Dual& b) { return a * inverse(b); }

inline Dual operator+(const Dual& a, double b) { return a + Dual(b); }
inline Dual operator+(double a, const Dual& b) { return Dual(a) + b; }
inline Dual operator-(const Dual& a, double b) { return a - Dual(b); }
inline Dual operator-(double a, const Dual& b) { return Dual(a) - b; }
inline Dual operator*(const Dual& a, double b) {
  return {a.f * b, a.d1 * b, a.d2 * b, a.d12 * b};
}
inline Dual operator*(double a, const Dual& b) { return b * a; }
inline Dual operator/(const Dual& a, double b) { return a * (1.0 / b); }
inline Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

inline Dual sin(const Dual& x) {
  return chain(x, std::sin(x.f), std::cos(x.f), -std::sin(x.f));
}
inline Dual cos(const Dual& x) {
  return chain(x, std::cos(x.f), -std::sin(x.f), -std::cos(x.f));
}
inline Dual tan(const Dual& x) {
  const double t = std::tan(x.f);
  const double s = 1.0 + t * t;
  return chain(x, t, s, 2.0 * t * s);
}
inline Dual exp(const Dual& x) {
  const double e = std::exp(x.f);
  return chain(x, e, e, e);
}
inline Dual log(const Dual& x) {
  const double inv = 1.0 / x.f;
  return chain(x, std::log(x.f), inv, -inv * inv);
}
inline Dual sqrt(const Dual& x) {
  const double r = std::sqrt(x.f);
  return chain(x, r, 0.5 / r, -0.25 / (r * x.f));
}
inline Dual pow(const Dual& x, double p) {
  const double v = std::pow(x.f, p);
  return chain(x, v, p * std::pow(x.f, p - 1.0),
               p * (p - 1.0) * std::pow(x.f, p - 2.0));
}
inline Dual pow(const Dual& x, int p) { return pow(x, double(p)); }

}  // namespace curv

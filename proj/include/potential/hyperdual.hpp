#pragma once

#include <cmath>

namespace potential {

/// Second-order forward-mode number a + b e1 + c e2 + d e1e2 with e1^2 = e2^2 = 0.
///
/// Seeding x = x0 + e1 + e2 yields f, f', f' and f'' in the four slots;
/// seeding two different inputs on e1 and e2 yields the mixed partial.
/// Used to differentiate surface parameterizations exactly.
template <typename T>
struct HyperDual {
  T re{};
  T e1{};
  T e2{};
  T e12{};

  constexpr HyperDual() = default;
  constexpr HyperDual(T value) : re(value) {}  // NOLINT(google-explicit-constructor)
  constexpr HyperDual(T value, T d1, T d2, T d12) : re(value), e1(d1), e2(d2), e12(d12) {}

  // Apply a scalar function with derivatives f0, f1 = f'(re), f2 = f''(re).
  constexpr HyperDual chain(T f0, T f1, T f2) const {
    return {f0, f1 * e1, f1 * e2, f1 * e12 + f2 * e1 * e2};
  }

  constexpr HyperDual& operator+=(const HyperDual& o) {
    re += o.re; e1 += o.e1; e2 += o.e2; e12 += o.e12;
    return *this;
  }
  constexpr HyperDual& operator-=(const HyperDual& o) {
    re -= o.re; e1 -= o.e1; e2 -= o.e2; e12 -= o.e12;
    return *this;
  }
  constexpr HyperDual& operator*=(const HyperDual& o) { return *this = *this * o; }
  constexpr HyperDual& operator/=(const HyperDual& o) { return *this = *this / o; }

  friend constexpr HyperDual operator-(const HyperDual& a) { return {-a.re, -a.e1, -a.e2, -a.e12}; }
  friend constexpr HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
  friend constexpr HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
  friend constexpr HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    return {a.re * b.re, a.re * b.e1 + a.e1 * b.re, a.re * b.e2 + a.e2 * b.re,
            a.re * b.e12 + a.e1 * b.e2 + a.e2 * b.e1 + a.e12 * b.re};
  }
  friend constexpr HyperDual operator/(const HyperDual& a, const HyperDual& b) {
    const T inv = T(1) / b.re;
    return a * b.chain(inv, -inv * inv, 2 * inv * inv * inv);
  }
};

template <typename T>
HyperDual<T> sin(const HyperDual<T>& x) {
  using std::sin, std::cos;
  return x.chain(sin(x.re), cos(x.re), -sin(x.re));
}

template <typename T>
HyperDual<T> cos(const HyperDual<T>& x) {
  using std::sin, std::cos;
  return x.chain(cos(x.re), -sin(x.re), -cos(x.re));
}

template <typename T>
HyperDual<T> sqrt(const HyperDual<T>& x) {
  using std::sqrt;
  const T s = sqrt(x.re);
  return x.chain(s, T(0.5) / s, T(-0.25) / (s * x.re));
}

/// Plain value of a possibly-dual number.
template <typename T>
constexpr T value_of(const HyperDual<T>& x) { return x.re; }
constexpr double value_of(double x) { return x; }

}  // namespace potential

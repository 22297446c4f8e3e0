#pragma once

#include <cmath>
#include <stdexcept>
#include <type_traits>

#include <Eigen/Core>

namespace folia {

/// Truncated first-order dual number with one infinitesimal direction.
/// Nesting (Jet<Jet<double>>) yields exact mixed second derivatives; all
/// differentiation in the library runs through these, never through
/// finite differences.
template <class T>
struct Jet {
  T a{};  // value
  T b{};  // derivative along the curve parameter

  constexpr Jet() = default;
  constexpr Jet(const T& value) : a(value) {}
  constexpr Jet(const T& value, const T& deriv) : a(value), b(deriv) {}

  template <class U,
            std::enable_if_t<std::is_arithmetic_v<U> && !std::is_same_v<U, T>, int> = 0>
  constexpr Jet(U value) : a(T(value)) {}

  static constexpr Jet variable(const T& value) { return Jet(value, T(1)); }

  Jet& operator+=(const Jet& r) { a += r.a; b += r.b; return *this; }
  Jet& operator-=(const Jet& r) { a -= r.a; b -= r.b; return *this; }
  Jet& operator*=(const Jet& r) { b = b * r.a + a * r.b; a = a * r.a; return *this; }
  Jet& operator/=(const Jet& r) { *this = *this / r; return *this; }

  friend Jet operator+(const Jet& x, const Jet& y) { return {x.a + y.a, x.b + y.b}; }
  friend Jet operator-(const Jet& x, const Jet& y) { return {x.a - y.a, x.b - y.b}; }
  friend Jet operator-(const Jet& x) { return {-x.a, -x.b}; }
  friend Jet operator+(const Jet& x) { return x; }
  friend Jet operator*(const Jet& x, const Jet& y) {
    return {x.a * y.a, x.b * y.a + x.a * y.b};
  }
  friend Jet operator/(const Jet& x, const Jet& y) {
    const T inv = T(1) / y.a;
    const T q = x.a * inv;
    return {q, (x.b - q * y.b) * inv};
  }

  friend Jet operator+(const Jet& x, double s) { return {x.a + T(s), x.b}; }
  friend Jet operator+(double s, const Jet& x) { return {T(s) + x.a, x.b}; }
  friend Jet operator-(const Jet& x, double s) { return {x.a - T(s), x.b}; }
  friend Jet operator-(double s, const Jet& x) { return {T(s) - x.a, -x.b}; }
  friend Jet operator*(const Jet& x, double s) { return {x.a * T(s), x.b * T(s)}; }
  friend Jet operator*(double s, const Jet& x) { return {T(s) * x.a, T(s) * x.b}; }
  friend Jet operator/(const Jet& x, double s) { return {x.a / T(s), x.b / T(s)}; }
  friend Jet operator/(double s, const Jet& x) { return Jet(T(s)) / x; }

  friend bool operator==(const Jet& x, const Jet& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const Jet& x, const Jet& y) { return !(x == y); }
};

using J1 = Jet<double>;
using J2 = Jet<J1>;

inline double jet_value(double x) { return x; }
template <class T>
double jet_value(const Jet<T>& x) { return jet_value(x.a); }

inline double jet_abs_value(double x) { return std::abs(x); }
template <class T>
double jet_abs_value(const Jet<T>& x) { return std::abs(jet_value(x)); }

using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;
using std::tan;

template <class T> Jet<T> sin(const Jet<T>& x) { return {sin(x.a), cos(x.a) * x.b}; }
template <class T> Jet<T> cos(const Jet<T>& x) { return {cos(x.a), -sin(x.a) * x.b}; }
template <class T> Jet<T> exp(const Jet<T>& x) {
  const T e = exp(x.a);
  return {e, e * x.b};
}
template <class T> Jet<T> log(const Jet<T>& x) {
  if (jet_value(x.a) <= 0.0)
    throw std::domain_error("jet log: argument not positive, derivative undefined");
  return {log(x.a), x.b / x.a};
}
template <class T> Jet<T> sqrt(const Jet<T>& x) {
  if (jet_value(x.a) <= 0.0)
    throw std::domain_error("jet sqrt: argument not positive, derivative undefined");
  const T r = sqrt(x.a);
  return {r, x.b / (2.0 * r)};
}
template <class T> Jet<T> tan(const Jet<T>& x) {
  const T c = cos(x.a);
  return {tan(x.a), x.b / (c * c)};
}
template <class T> Jet<T> pow(const Jet<T>& x, int k) {
  if (k == 0) return Jet<T>(T(1));
  Jet<T> r = x;
  for (int i = 1; i < k; ++i) r *= x;
  return r;
}

/// abs is differentiable away from zero only; evaluating at the kink is an
/// evaluation error per the field-expression contract.
template <class T> Jet<T> abs(const Jet<T>& x) {
  const double v = jet_value(x.a);
  if (v == 0.0)
    throw std::domain_error("jet abs: not differentiable at zero");
  return v > 0.0 ? x : -x;
}

}  // namespace folia

namespace Eigen {

template <class T>
struct NumTraits<folia::Jet<T>> : NumTraits<double> {
  using Real = folia::Jet<T>;
  using NonInteger = folia::Jet<T>;
  using Nested = folia::Jet<T>;
  using Literal = double;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3,
    RequireInitialization = 1,
  };
};

template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<folia::Jet<T>, double, BinaryOp> {
  using ReturnType = folia::Jet<T>;
};
template <class T, class BinaryOp>
struct ScalarBinaryOpTraits<double, folia::Jet<T>, BinaryOp> {
  using ReturnType = folia::Jet<T>;
};

}  // namespace Eigen

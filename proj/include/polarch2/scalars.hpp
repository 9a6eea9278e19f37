#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace polarch2 {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always reduced, denominator > 0.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline BigInt den(const Rational& q) { return boost::multiprecision::denominator(q); }

double rational_to_double(const Rational& q);
std::string rational_to_string(const Rational& q);   // always "n/d", d > 0
Rational parse_rational(const std::string& text);    // strict inverse of the above

// Exact square root of a nonnegative rational, when it exists in Q.
std::optional<Rational> rational_sqrt(const Rational& q);

/**
 * Element a + b*sqrt(3) of the real quadratic field Q(sqrt 3).
 */
struct QSqrt3 {
  Rational a;
  Rational b;

  QSqrt3() : a(0), b(0) {}
  QSqrt3(int v) : a(v), b(0) {}                       // NOLINT: implicit by design
  QSqrt3(Rational ra) : a(std::move(ra)), b(0) {}     // NOLINT
  QSqrt3(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  static QSqrt3 sqrt3() { return QSqrt3(Rational(0), Rational(1)); }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  // Galois involution a + b*sqrt(3) -> a - b*sqrt(3); a ring automorphism.
  QSqrt3 galois() const { return QSqrt3(a, -b); }

  // Exact sign as a real number: -1, 0, +1.
  int sign() const;

  QSqrt3 inverse() const;
  double to_double() const;

  std::string to_string() const;                      // "a/b + c/d*s3"
  static QSqrt3 parse(const std::string& text);       // strict inverse

  friend QSqrt3 operator+(const QSqrt3& x, const QSqrt3& y) { return {x.a + y.a, x.b + y.b}; }
  friend QSqrt3 operator-(const QSqrt3& x, const QSqrt3& y) { return {x.a - y.a, x.b - y.b}; }
  friend QSqrt3 operator-(const QSqrt3& x) { return {-x.a, -x.b}; }
  friend QSqrt3 operator*(const QSqrt3& x, const QSqrt3& y) {
    // Coordinates are overwhelmingly plain rationals (b = 0) or zero, and
    // arbitrary-precision products dominate the whole project's runtime, so
    // take the cheap exits before the generic 4-product formula.
    if (x.is_zero() || y.is_zero()) return {};
    if (x.b.is_zero() && y.b.is_zero()) return {x.a * y.a, Rational()};
    return {x.a * y.a + 3 * (x.b * y.b), x.a * y.b + x.b * y.a};
  }
  friend QSqrt3 operator/(const QSqrt3& x, const QSqrt3& y) { return x * y.inverse(); }
  QSqrt3& operator+=(const QSqrt3& y) { a += y.a; b += y.b; return *this; }
  QSqrt3& operator-=(const QSqrt3& y) { a -= y.a; b -= y.b; return *this; }
  QSqrt3& operator*=(const QSqrt3& y) { *this = *this * y; return *this; }
  friend bool operator==(const QSqrt3& x, const QSqrt3& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const QSqrt3& x, const QSqrt3& y) { return !(x == y); }
  friend bool operator<(const QSqrt3& x, const QSqrt3& y) { return (x - y).sign() < 0; }
  friend bool operator>(const QSqrt3& x, const QSqrt3& y) { return (x - y).sign() > 0; }
};

// Exact square root within Q(sqrt 3), when one exists there.
std::optional<QSqrt3> qsqrt3_sqrt(const QSqrt3& q);

/**
 * Element re + i*im with re, im in Q(sqrt 3): the ground field of all
 * symbolic computation in this project.
 */
struct ExactScalar {
  QSqrt3 re;
  QSqrt3 im;

  ExactScalar() = default;
  ExactScalar(int v) : re(v), im(0) {}                // NOLINT
  ExactScalar(QSqrt3 r) : re(std::move(r)), im(0) {}  // NOLINT
  ExactScalar(QSqrt3 r, QSqrt3 i) : re(std::move(r)), im(std::move(i)) {}

  static ExactScalar i() { return ExactScalar(QSqrt3(0), QSqrt3(1)); }

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  ExactScalar conj() const { return {re, -im}; }
  QSqrt3 norm2() const { return re * re + im * im; }  // |x|^2, zero iff x = 0
  ExactScalar inverse() const;

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

  std::string to_string() const;                      // "(re) + (im)*i"
  static ExactScalar parse(const std::string& text);

  friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend ExactScalar operator-(const ExactScalar& x) { return {-x.re, -x.im}; }
  friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
    // Same zero/real fast paths as QSqrt3: matrix entries are sparse and
    // often purely real or purely imaginary.
    if (x.is_zero() || y.is_zero()) return {};
    if (x.is_real()) {
      if (y.is_real()) return {x.re * y.re, QSqrt3()};
      return {x.re * y.re, x.re * y.im};
    }
    if (x.re.is_zero()) {
      if (y.is_real()) return {QSqrt3(), x.im * y.re};
      return {-(x.im * y.im), x.im * y.re};
    }
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) {
    return x * y.inverse();
  }
  ExactScalar& operator+=(const ExactScalar& y) { re += y.re; im += y.im; return *this; }
  ExactScalar& operator-=(const ExactScalar& y) { re -= y.re; im -= y.im; return *this; }
  ExactScalar& operator*=(const ExactScalar& y) { *this = *this * y; return *this; }
  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.re == y.re && x.im == y.im;
  }
  friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }
};

}  // namespace polarch2

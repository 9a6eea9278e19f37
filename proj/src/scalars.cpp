#include "polarch2/scalars.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cctype>

namespace polarch2 {

double rational_to_double(const Rational& q) { return q.convert_to<double>(); }

std::string rational_to_string(const Rational& q) {
  return num(q).str() + "/" + den(q).str();
}

namespace {

// Consume one strict "n/d" token starting at pos; advances pos past it.
Rational parse_rational_at(const std::string& s, size_t& pos) {
  size_t start = pos;
  if (pos < s.size() && s[pos] == '-') ++pos;
  size_t digits0 = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == digits0 || pos >= s.size() || s[pos] != '/')
    throw std::invalid_argument("rational: expected n/d at position " + std::to_string(start));
  size_t slash = pos++;
  size_t digits1 = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == digits1)
    throw std::invalid_argument("rational: missing denominator at position " + std::to_string(start));
  BigInt numerator(s.substr(start, slash - start));
  BigInt denominator(s.substr(digits1, pos - digits1));
  if (denominator == 0) throw std::invalid_argument("rational: zero denominator");
  Rational q(numerator);
  q /= denominator;
  return q;
}

void expect(const std::string& s, size_t& pos, const std::string& token) {
  if (s.compare(pos, token.size(), token) != 0)
    throw std::invalid_argument("expected \"" + token + "\" at position " + std::to_string(pos) +
                                " in \"" + s + "\"");
  pos += token.size();
}

}  // namespace

Rational parse_rational(const std::string& text) {
  size_t pos = 0;
  Rational q = parse_rational_at(text, pos);
  if (pos != text.size()) throw std::invalid_argument("rational: trailing characters in \"" + text + "\"");
  return q;
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  BigInt n = boost::multiprecision::sqrt(num(q));
  BigInt d = boost::multiprecision::sqrt(den(q));
  if (n * n != num(q) || d * d != den(q)) return std::nullopt;
  Rational r(n);
  r /= d;
  return r;
}

int QSqrt3::sign() const {
  if (b == 0) return a == 0 ? 0 : (a > 0 ? 1 : -1);
  if (a == 0) return b > 0 ? 1 : -1;
  if (a > 0 && b > 0) return 1;
  if (a < 0 && b < 0) return -1;
  // Mixed signs: compare a^2 with 3 b^2; the term with the larger square wins.
  Rational d = a * a - 3 * (b * b);
  if (d == 0) throw std::logic_error("sqrt(3) cannot be rational");
  bool a_dominates = d > 0;
  return a_dominates ? (a > 0 ? 1 : -1) : (b > 0 ? 1 : -1);
}

QSqrt3 QSqrt3::inverse() const {
  if (is_zero()) throw std::domain_error("QSqrt3: division by zero");
  Rational n = a * a - 3 * (b * b);  // nonzero for nonzero elements
  return {a / n, -b / n};
}

double QSqrt3::to_double() const {
  // Evaluate in 50-digit precision so the single rounding to double is exact
  // even when a and b*sqrt(3) nearly cancel.
  using Big = boost::multiprecision::cpp_bin_float_50;
  static const Big kSqrt3 = sqrt(Big(3));
  Big va(num(a));
  va /= Big(den(a));
  Big vb(num(b));
  vb /= Big(den(b));
  return (va + vb * kSqrt3).convert_to<double>();
}

std::string QSqrt3::to_string() const {
  return rational_to_string(a) + " + " + rational_to_string(b) + "*s3";
}

QSqrt3 QSqrt3::parse(const std::string& text) {
  size_t pos = 0;
  Rational ra = parse_rational_at(text, pos);
  expect(text, pos, " + ");
  Rational rb = parse_rational_at(text, pos);
  expect(text, pos, "*s3");
  if (pos != text.size()) throw std::invalid_argument("QSqrt3: trailing characters in \"" + text + "\"");
  return {ra, rb};
}

std::optional<QSqrt3> qsqrt3_sqrt(const QSqrt3& q) {
  if (q.sign() < 0) return std::nullopt;
  if (q.is_zero()) return QSqrt3(0);
  if (q.b == 0) {
    if (auto x = rational_sqrt(q.a)) return QSqrt3(*x, Rational(0));
    if (auto y = rational_sqrt(q.a / 3)) return QSqrt3(Rational(0), *y);
    return std::nullopt;
  }
  // (x + y*s3)^2 = q  =>  x^2 + 3y^2 = a, 2xy = b  =>  x^2 is a root of
  // 4t^2 - 4at + 3b^2 = 0, i.e. t = (a +- sqrt(a^2 - 3b^2)) / 2.
  auto d = rational_sqrt(q.a * q.a - 3 * (q.b * q.b));
  if (!d) return std::nullopt;
  const Rational roots[2] = {Rational((q.a + *d) / 2), Rational((q.a - *d) / 2)};
  for (const Rational& t : roots) {
    auto x = rational_sqrt(t);
    if (!x || *x == 0) continue;
    QSqrt3 root(*x, q.b / (2 * *x));
    if (root * root == q) return root.sign() >= 0 ? root : -root;
  }
  return std::nullopt;
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw std::domain_error("ExactScalar: division by zero");
  QSqrt3 inv_n = norm2().inverse();
  return {re * inv_n, -im * inv_n};
}

std::string ExactScalar::to_string() const {
  return "(" + re.to_string() + ") + (" + im.to_string() + ")*i";
}

ExactScalar ExactScalar::parse(const std::string& text) {
  size_t pos = 0;
  expect(text, pos, "(");
  size_t close = text.find(')', pos);
  if (close == std::string::npos) throw std::invalid_argument("ExactScalar: missing ')'");
  QSqrt3 r = QSqrt3::parse(text.substr(pos, close - pos));
  pos = close + 1;
  expect(text, pos, " + (");
  close = text.find(')', pos);
  if (close == std::string::npos) throw std::invalid_argument("ExactScalar: missing ')'");
  QSqrt3 i = QSqrt3::parse(text.substr(pos, close - pos));
  pos = close + 1;
  expect(text, pos, "*i");
  if (pos != text.size()) throw std::invalid_argument("ExactScalar: trailing characters");
  return {r, i};
}

}  // namespace polarch2

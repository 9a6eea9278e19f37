#include "polarch2/lie.hpp"

namespace polarch2 {

namespace {

const ExactScalar kOne{QSqrt3(1)};
const ExactScalar kI = ExactScalar::i();

Mat3 basis_entry(int r, int c, ExactScalar v) {
  Mat3 m;
  m(r, c) = std::move(v);
  return m;
}

}  // namespace

Mat3 Mat3::identity() { return diag(kOne, kOne, kOne); }

Mat3 Mat3::diag(ExactScalar a, ExactScalar b, ExactScalar c) {
  Mat3 m;
  m(0, 0) = std::move(a);
  m(1, 1) = std::move(b);
  m(2, 2) = std::move(c);
  return m;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

Mat3 operator-(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = -a(i, j);
  return r;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      const ExactScalar& l = a(i, k);
      if (l.is_zero()) continue;  // entries are sparse; skip dead products
      for (int j = 0; j < 3; ++j) {
        if (b(k, j).is_zero()) continue;
        r(i, j) += l * b(k, j);
      }
    }
  return r;
}

Mat3 operator*(const ExactScalar& s, const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = s * a(i, j);
  return r;
}

Mat3 operator*(const QSqrt3& s, const Mat3& a) { return ExactScalar(s) * a; }

ExactScalar trace(const Mat3& a) { return a(0, 0) + a(1, 1) + a(2, 2); }

ExactScalar det3(const Mat3& a) {
  return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
         a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
         a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

Mat3 dagger(const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(j, i).conj();
  return r;
}

const Mat3& signature_matrix() {
  static const Mat3 ip = Mat3::diag(-kOne, kOne, kOne);
  return ip;
}

bool is_su12(const Mat3& a) {
  if (!trace(a).is_zero()) return false;
  // Entrywise form of a^* Ip + Ip a = 0 with Ip = diag(-1,1,1):
  //   eps_i a_ij + eps_j conj(a_ji) = 0, and (j,i) is the conjugate of (i,j),
  // so the upper triangle plus the diagonal decides membership without any
  // matrix products.
  static constexpr int eps[3] = {-1, 1, 1};
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      const ExactScalar& x = a(i, j);
      const ExactScalar& y = a(j, i);
      if (eps[i] == eps[j]) {
        if (x.re != -y.re || x.im != y.im) return false;
      } else {
        if (x.re != y.re || x.im != -y.im) return false;
      }
    }
  return true;
}

LieElt::LieElt(Mat3 m) : mat_(std::move(m)) {
  if (!is_su12(mat_)) throw std::invalid_argument("matrix is not in su(1,2)");
}

LieElt operator+(const LieElt& a, const LieElt& b) { return LieElt(a.mat() + b.mat()); }
LieElt operator-(const LieElt& a, const LieElt& b) { return LieElt(a.mat() - b.mat()); }
LieElt operator-(const LieElt& a) { return LieElt(-a.mat()); }
LieElt operator*(const QSqrt3& s, const LieElt& a) { return LieElt(s * a.mat()); }

LieElt bracket(const LieElt& a, const LieElt& b) {
  return LieElt(a.mat() * b.mat() - b.mat() * a.mat());
}

const std::array<LieElt, 8>& std_basis() {
  static const std::array<LieElt, 8> basis = [] {
    std::array<LieElt, 8> b;
    b[0] = LieElt(Mat3::diag(kI, ExactScalar(), -kI));
    b[1] = LieElt(Mat3::diag(ExactScalar(), kI, -kI));
    b[2] = LieElt(basis_entry(0, 1, kOne) + basis_entry(1, 0, kOne));
    b[3] = LieElt(basis_entry(0, 1, kI) + basis_entry(1, 0, -kI));
    b[4] = LieElt(basis_entry(0, 2, kOne) + basis_entry(2, 0, kOne));
    b[5] = LieElt(basis_entry(0, 2, kI) + basis_entry(2, 0, -kI));
    b[6] = LieElt(basis_entry(1, 2, kOne) + basis_entry(2, 1, -kOne));
    b[7] = LieElt(basis_entry(1, 2, kI) + basis_entry(2, 1, kI));
    return b;
  }();
  return basis;
}

std::array<QSqrt3, 8> std_coords(const LieElt& x) {
  const Mat3& m = x.mat();
  // The membership check guarantees an imaginary diagonal and determined
  // lower triangle, so entries (0,0), (1,1), (0,1), (0,2), (1,2) carry all
  // eight real coordinates.
  return {m(0, 0).im, m(1, 1).im, m(0, 1).re, m(0, 1).im,
          m(0, 2).re, m(0, 2).im, m(1, 2).re, m(1, 2).im};
}

LieElt from_std_coords(const std::array<QSqrt3, 8>& c) {
  Mat3 acc;
  const auto& basis = std_basis();
  for (int i = 0; i < 8; ++i) acc = acc + c[i] * basis[i].mat();
  return LieElt(acc);
}

Mat8 ad_matrix(const LieElt& x) {
  Mat8 ad{};
  const auto& basis = std_basis();
  for (int j = 0; j < 8; ++j) {
    auto col = std_coords(bracket(x, basis[j]));
    for (int i = 0; i < 8; ++i) ad[i][j] = col[i];
  }
  return ad;
}

QSqrt3 killing(const LieElt& x, const LieElt& y) {
  Mat8 ax = ad_matrix(x), ay = ad_matrix(y);
  QSqrt3 tr;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) tr += ax[i][j] * ay[j][i];
  return tr;
}

QSqrt3 trace_form(const LieElt& x, const LieElt& y) {
  ExactScalar t;  // only the diagonal of the product is needed
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      if (x.mat()(i, k).is_zero() || y.mat()(k, i).is_zero()) continue;
      t += x.mat()(i, k) * y.mat()(k, i);
    }
  if (!t.is_real()) throw std::logic_error("tr(xy) must be real on su(1,2)");
  return t.re;
}

LieElt cartan_theta(const LieElt& x) {
  // Conjugation by Ip = diag(-1,1,1) just flips the signs of the entries
  // that mix the first row/column with the rest.
  Mat3 r = x.mat();
  r(0, 1) = -r(0, 1);
  r(0, 2) = -r(0, 2);
  r(1, 0) = -r(1, 0);
  r(2, 0) = -r(2, 0);
  return LieElt(std::move(r));
}

QSqrt3 inner(const LieElt& x, const LieElt& y) {
  return -2 * trace_form(cartan_theta(x), y);
}

std::pair<LieElt, LieElt> split(const LieElt& x) {
  LieElt th = cartan_theta(x);
  const QSqrt3 half(Rational(1) / 2);
  return {half * (x + th), half * (x - th)};
}

GroupElt::GroupElt() : g_(Mat3::identity()) {}

GroupElt::GroupElt(Mat3 g) : g_(std::move(g)) {
  const Mat3& ip = signature_matrix();
  if (dagger(g_) * ip * g_ != ip)
    throw std::invalid_argument("matrix does not preserve the (1,2) form");
  if (det3(g_) != kOne)
    throw std::invalid_argument("matrix must have determinant 1");
}

GroupElt GroupElt::inverse() const {
  // Ip g^* Ip is the exact inverse of any form-preserving g, so revalidating
  // it would only repeat the work done when g itself was built.  Like the
  // Cartan involution, conjugating by Ip is a sign pattern, not a product.
  Mat3 r = dagger(g_);
  r(0, 1) = -r(0, 1);
  r(0, 2) = -r(0, 2);
  r(1, 0) = -r(1, 0);
  r(2, 0) = -r(2, 0);
  return GroupElt(std::move(r), Trusted{});
}

GroupElt operator*(const GroupElt& a, const GroupElt& b) {
  return GroupElt(a.mat() * b.mat());
}

GroupElt exp_nilpotent(const LieElt& x) {
  const Mat3& m = x.mat();
  Mat3 m2 = m * m;
  if (m2 * m != Mat3::zero())
    throw std::domain_error("exp_nilpotent requires x^3 = 0");
  const ExactScalar half{QSqrt3(Rational(1) / 2)};
  return GroupElt(Mat3::identity() + m + half * m2);
}

LieElt Ad(const GroupElt& g, const LieElt& x) {
  return LieElt(g.mat() * x.mat() * g.inverse().mat());
}

Mat8 Ad_matrix(const GroupElt& g) {
  Mat8 out{};
  const Mat3 inv = g.inverse().mat();  // shared across all eight columns
  const auto& basis = std_basis();
  for (int j = 0; j < 8; ++j) {
    auto col = std_coords(LieElt(g.mat() * basis[j].mat() * inv));
    for (int i = 0; i < 8; ++i) out[i][j] = col[i];
  }
  return out;
}

}  // namespace polarch2

#pragma once

// Exact linear algebra for the real Lie algebra su(1,2): trace-free 3x3
// complex matrices X with X^* Ip + Ip X = 0, where Ip = diag(-1,1,1) is the
// signature matrix of the indefinite Hermitian form.  All entries live in
// Q(sqrt 3)(i), so every identity in this header is checked exactly.

#include "polarch2/scalars.hpp"

#include <array>
#include <utility>

namespace polarch2 {

struct Mat3 {
  std::array<std::array<ExactScalar, 3>, 3> m{};

  ExactScalar& operator()(int r, int c) { return m[r][c]; }
  const ExactScalar& operator()(int r, int c) const { return m[r][c]; }

  static Mat3 zero() { return {}; }
  static Mat3 identity();
  static Mat3 diag(ExactScalar a, ExactScalar b, ExactScalar c);

  bool operator==(const Mat3& o) const { return m == o.m; }
  bool operator!=(const Mat3& o) const { return !(*this == o); }
};

Mat3 operator+(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a, const Mat3& b);
Mat3 operator-(const Mat3& a);
Mat3 operator*(const Mat3& a, const Mat3& b);
Mat3 operator*(const ExactScalar& s, const Mat3& a);
Mat3 operator*(const QSqrt3& s, const Mat3& a);

ExactScalar trace(const Mat3& a);
ExactScalar det3(const Mat3& a);
Mat3 dagger(const Mat3& a);  // conjugate transpose

// Signature matrix of the form; fixed once for the whole project.
const Mat3& signature_matrix();

bool is_su12(const Mat3& a);

// A validated element of su(1,2).  Construction checks membership exactly and
// throws std::invalid_argument otherwise, so downstream code can rely on the
// generic shape of entries (imaginary diagonal, paired off-diagonals).
class LieElt {
 public:
  LieElt() : mat_(Mat3::zero()) {}
  explicit LieElt(Mat3 m);

  const Mat3& mat() const { return mat_; }
  bool is_zero() const { return mat_ == Mat3::zero(); }

  bool operator==(const LieElt& o) const { return mat_ == o.mat_; }
  bool operator!=(const LieElt& o) const { return !(*this == o); }

 private:
  Mat3 mat_;
};

LieElt operator+(const LieElt& a, const LieElt& b);
LieElt operator-(const LieElt& a, const LieElt& b);
LieElt operator-(const LieElt& a);
LieElt operator*(const QSqrt3& s, const LieElt& a);

LieElt bracket(const LieElt& a, const LieElt& b);

// Spanning set used for coordinates and for the trace of ad-compositions:
//   0: diag(i,0,-i)        1: diag(0,i,-i)
//   2: E01+E10             3: i(E01-E10)
//   4: E02+E20             5: i(E02-E20)
//   6: E12-E21             7: i(E12+E21)
const std::array<LieElt, 8>& std_basis();
std::array<QSqrt3, 8> std_coords(const LieElt& x);
LieElt from_std_coords(const std::array<QSqrt3, 8>& c);

using Mat8 = std::array<std::array<QSqrt3, 8>, 8>;

// Matrix of ad(x) acting on coordinates w.r.t. std_basis().
Mat8 ad_matrix(const LieElt& x);

// Killing form computed as tr(ad(x) ad(y)); for su(1,2) it equals 6 tr(xy).
QSqrt3 killing(const LieElt& x, const LieElt& y);
QSqrt3 trace_form(const LieElt& x, const LieElt& y);  // tr(xy), real here

// Cartan involution X -> Ip X Ip; fixes the maximal compact part.
LieElt cartan_theta(const LieElt& x);

// Positive-definite invariant inner product <x,y> = -2 tr(theta(x) y).
// The scale is pinned so the associated symmetric metric has holomorphic
// sectional curvature -1; it equals -(1/3) * killing(theta(x), y).
QSqrt3 inner(const LieElt& x, const LieElt& y);

// Orthogonal split x = k + p into the theta-fixed part k and theta-negated
// part p; returns (k_part, p_part).
std::pair<LieElt, LieElt> split(const LieElt& x);

// A validated element of SU(1,2): g^* Ip g = Ip and det g = 1.
class GroupElt {
 public:
  GroupElt();  // identity
  explicit GroupElt(Mat3 g);

  const Mat3& mat() const { return g_; }
  GroupElt inverse() const;

 private:
  struct Trusted {};  // tag for constructions whose membership is forced
  GroupElt(Mat3 g, Trusted) : g_(std::move(g)) {}

  Mat3 g_;
};

GroupElt operator*(const GroupElt& a, const GroupElt& b);

// Exact exponential for x with x^3 = 0 (throws std::domain_error otherwise).
GroupElt exp_nilpotent(const LieElt& x);

LieElt Ad(const GroupElt& g, const LieElt& x);

// Matrix of Ad(g) on std_basis() coordinates.
Mat8 Ad_matrix(const GroupElt& g);

}  // namespace polarch2

#pragma once

// Exact subspace arithmetic in the 8-dimensional coordinate space of the Lie
// algebra.  A Subspace is stored as a canonical reduced row-echelon basis, so
// two subspaces are equal iff their stored bases are identical row lists.

#include "polarch2/lie.hpp"

#include <optional>
#include <vector>

namespace polarch2 {

using Vec8 = std::array<QSqrt3, 8>;

Vec8 operator+(const Vec8& x, const Vec8& y);
Vec8 operator-(const Vec8& x, const Vec8& y);
Vec8 operator*(const QSqrt3& s, const Vec8& x);
QSqrt3 dot(const Vec8& x, const Vec8& y);                    // standard dot
QSqrt3 form_value(const Mat8& g, const Vec8& x, const Vec8& y);  // x^T g y
Vec8 mat_vec(const Mat8& a, const Vec8& x);

class Subspace {
 public:
  Subspace() = default;  // the zero subspace

  static Subspace span(const std::vector<Vec8>& gens);
  static Subspace span_elts(const std::vector<LieElt>& gens);
  static Subspace full();

  int dim() const { return static_cast<int>(rows_.size()); }
  const std::vector<Vec8>& basis() const { return rows_; }
  std::vector<LieElt> lie_basis() const;

  bool contains(const Vec8& v) const;
  bool contains(const LieElt& x) const { return contains(std_coords(x)); }
  bool contains(const Subspace& other) const;

  bool operator==(const Subspace& o) const { return rows_ == o.rows_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  std::vector<Vec8> rows_;  // canonical echelon basis, pivot columns increasing
};

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);

// Orthogonal complement inside the whole space w.r.t. a symmetric positive
// definite form g (8x8).  complement(S) has dimension 8 - dim S.
Subspace ortho_complement(const Subspace& s, const Mat8& g);

// Complement of s taken inside the ambient subspace w.r.t. g.
Subspace ortho_complement_in(const Subspace& s, const Subspace& ambient, const Mat8& g);

// Orthogonal projection of x onto s w.r.t. g.
Vec8 project(const Vec8& x, const Subspace& s, const Mat8& g);

// Image of s under the linear map a.
Subspace image(const Mat8& a, const Subspace& s);

// Exact inverse; nullopt when a is singular.
std::optional<Mat8> invert8(const Mat8& a);

// Solution space of a x = 0.
Subspace kernel(const Mat8& a);

// Result of a closure check: when the span fails to be a subalgebra, the
// witness records which basis pair leaks out and what their bracket is.
struct SubalgebraCheck {
  bool closed = true;
  int i = -1, j = -1;
  LieElt witness;
};

SubalgebraCheck is_subalgebra(const Subspace& s);

// x^T (g J) y vanishes for every pair from s: s meets its J-rotation only
// orthogonally ("totally real").
bool is_real(const Subspace& s, const Mat8& j, const Mat8& g);

// J maps s onto itself ("complex").
bool is_complex(const Subspace& s, const Mat8& j);

// Inertia (positive, negative, zero) of a symmetric form given as a dense
// matrix, via congruence diagonalization; exact.
std::array<int, 3> signature_of_form(std::vector<std::vector<QSqrt3>> m);

}  // namespace polarch2

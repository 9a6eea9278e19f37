#pragma once

// Restricted-root structure of su(1,2) relative to a maximal flat direction
// in the symmetric part, plus the pinned working basis the rest of the
// project is phrased in:
//
//   theta(Z), theta(U1), theta(U2), T, B, U1, U2, Z
//
// with [B, U1] = (1/2) U1, [B, Z] = Z, [U1, U2] = Z, [T, U1] = U2, and the
// diagonal Gram (2, 2, 2, 4/3, 1, 2, 2, 2).  Everything here is exact.

#include "polarch2/subspace.hpp"

namespace polarch2 {

using Mat4q = std::array<std::array<QSqrt3, 4>, 4>;

// The pinned flat generator: (1/2)(E01 + E10), unit length for inner().
LieElt choose_a();

// Eigenspace decomposition of ad on the chosen flat.  After normalizing the
// generator to unit length the eigenvalues are exactly 0, ±1/2, ±1.
struct RootDecomp {
  LieElt a_unit;       // normalized generator
  Subspace a;          // the flat itself
  Subspace k0;         // centralizer of the flat inside the compact part
  Subspace g0;         // eigenvalue 0  (= a + k0)
  Subspace g_alpha;    // eigenvalue +1/2
  Subspace g_2alpha;   // eigenvalue +1
  Subspace g_malpha;   // eigenvalue -1/2
  Subspace g_m2alpha;  // eigenvalue -1
};

// Throws std::invalid_argument if a_gen is zero or not in the symmetric part,
// std::domain_error if its norm has no exact square root in the field.
RootDecomp decompose(const LieElt& a_gen);

// Canonical basis in the fixed order above, as exact matrices.
enum CanonicalIndex { kThetaZ = 0, kThetaU1, kThetaU2, kT, kB, kU1, kU2, kZ };
const std::array<LieElt, 8>& canonical_basis();

// Checks every bracket of canonical basis pairs against the frozen table and
// the Gram against its pinned diagonal; on failure, appends a description of
// each mismatch to *report (if given).
bool verify_bracket_display(std::string* report = nullptr);

// Left-invariant metric on the solvable part spanned by {B, U1, U2, Z}:
// validates closure under bracket and returns the exact Gram diag(1,2,2,2).
Mat4q an_metric();

// Frozen structural data shared by the downstream checks.  Subspaces are in
// std_basis() coordinates; construction re-derives everything from matrices
// and throws std::logic_error if any pinned value fails to reproduce.
class StructureContext {
 public:
  static const StructureContext& get();

  const std::array<LieElt, 8>& basis() const { return basis_; }
  const LieElt& thetaZ() const { return basis_[kThetaZ]; }
  const LieElt& thetaU1() const { return basis_[kThetaU1]; }
  const LieElt& thetaU2() const { return basis_[kThetaU2]; }
  const LieElt& T() const { return basis_[kT]; }
  const LieElt& B() const { return basis_[kB]; }
  const LieElt& U1() const { return basis_[kU1]; }
  const LieElt& U2() const { return basis_[kU2]; }
  const LieElt& Z() const { return basis_[kZ]; }

  // Generator of the center of the compact part; ad of it restricts to the
  // complex structure on the symmetric part (sign pinned so the induced
  // action matches multiplication by i in the disk realization).
  const LieElt& zeta0() const { return zeta0_; }

  std::array<QSqrt3, 8> canonical_coords(const LieElt& x) const;
  LieElt from_canonical(const std::array<QSqrt3, 8>& c) const;

  const Mat8& gram_std() const { return gram_std_; }
  const Mat8& j_std() const { return j_std_; }
  const Mat8& gram_canonical() const { return gram_canonical_; }

  const Subspace& k() const { return k_; }
  const Subspace& p() const { return p_; }
  const Subspace& a() const { return decomp_.a; }
  const Subspace& k0() const { return decomp_.k0; }
  const Subspace& g0() const { return decomp_.g0; }
  const Subspace& g_alpha() const { return decomp_.g_alpha; }
  const Subspace& g_2alpha() const { return decomp_.g_2alpha; }
  const Subspace& g_malpha() const { return decomp_.g_malpha; }
  const Subspace& g_m2alpha() const { return decomp_.g_m2alpha; }
  const Subspace& n() const { return n_; }

  // Orthonormal-up-to-scale frame of the symmetric part:
  //   { B, (1-theta)U1, (1-theta)U2, (1/2)(1-theta)Z },  Gram diag(1,4,4,1).
  const std::array<LieElt, 4>& p_basis() const { return p_basis_; }
  const Mat4q& gram_p() const { return gram_p_; }

 private:
  StructureContext();

  std::array<LieElt, 8> basis_;
  LieElt zeta0_;
  RootDecomp decomp_;
  Mat8 gram_std_{}, j_std_{}, gram_canonical_{};
  Mat8 canon_to_std_{}, std_to_canon_{};
  Subspace k_, p_, n_;
  std::array<LieElt, 4> p_basis_;
  Mat4q gram_p_{};
};

}  // namespace polarch2

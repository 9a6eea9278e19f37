#pragma once

// Decision procedure for "does the subalgebra h act polarly with candidate
// section s" at the base point.  All subspaces are given in std_basis()
// coordinates; every check is exact.

#include "polarch2/root.hpp"

#include <string>
#include <vector>

namespace polarch2 {

// Tangent space at the base point of the orbit through it: the projection of
// h to the symmetric part.
Subspace orbit_tangent(const Subspace& h);

// Isotropy subalgebra at the base point: h ∩ k.
Subspace isotropy(const Subspace& h);

// Orthogonal complement of the orbit tangent inside the symmetric part.
Subspace normal_space(const Subspace& h);

// Codimension of a principal orbit, computed from the isotropy action on the
// normal space: dim ν - max_v dim [h∩k, v] over a deterministic sweep of v.
int cohomogeneity(const Subspace& h);

// One inner-product residual <[s_i, s_j], h_k> that should have vanished.
struct BracketWitness {
  int i, j, k;
  QSqrt3 residual;
};

struct PolarityReport {
  bool h_closed = false;
  SubalgebraCheck closure;  // witness filled when h fails to close

  int orbit_dim = 0;
  int isotropy_dim = 0;
  int normal_dim = 0;
  int cohom = 0;

  bool section_in_normal = false;
  bool slice_dimension_ok = false;    // dim s == cohomogeneity
  bool slice_transversal = false;     // [h∩k, v] ⊕ s = ν for some swept v
  bool section_real = false;
  bool section_complex = false;
  bool section_rejected = false;      // 2-dim but neither real nor complex
  bool bracket_orthogonal = false;
  std::vector<BracketWitness> bracket_witnesses;

  bool verdict = false;
  std::string reason;  // empty when the verdict is positive
};

PolarityReport is_polar_with_section(const Subspace& h, const Subspace& s);

}  // namespace polarch2

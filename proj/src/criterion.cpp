#include "polarch2/criterion.hpp"

#include <algorithm>

namespace polarch2 {

namespace {

// Deterministic sweep of coefficient tuples for "generic vector" searches.
// Geometric weights break most accidental degeneracies immediately; the grid
// of six small integers per coordinate is wide enough that a polynomial of
// degree <= 5 per variable cannot vanish on all of it, so the maximal rank
// seen over the sweep is the true generic rank.  dim ambient <= 4 here.
std::vector<std::vector<Rational>> coefficient_sweep(int k) {
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> powers;
  Rational w(1);
  for (int i = 0; i < k; ++i) {
    powers.push_back(w);
    w *= 7;
    w /= 3;
  }
  out.push_back(powers);
  std::vector<int> idx(k, 0);
  const int lo = -2, hi = 3;
  while (true) {
    std::vector<Rational> tuple;
    bool all_zero = true;
    for (int i = 0; i < k; ++i) {
      tuple.emplace_back(lo + idx[i]);
      if (idx[i] != -lo) all_zero = false;
    }
    if (!all_zero) out.push_back(std::move(tuple));
    int pos = 0;
    while (pos < k && ++idx[pos] == hi - lo + 1) idx[pos++] = 0;
    if (pos == k) break;
  }
  return out;
}

Vec8 combine(const std::vector<Vec8>& basis, const std::vector<Rational>& coeff) {
  Vec8 acc{};
  for (size_t i = 0; i < basis.size(); ++i)
    acc = acc + QSqrt3(coeff[i]) * basis[i];
  return acc;
}

// ad matrices of a basis of sub, built once so the sweeps below are pure
// coordinate arithmetic.
std::vector<Mat8> ad_of_basis(const Subspace& sub) {
  std::vector<Mat8> ads;
  ads.reserve(sub.basis().size());
  for (const auto& x : sub.lie_basis()) ads.push_back(ad_matrix(x));
  return ads;
}

std::vector<Vec8> moved_rows(const std::vector<Mat8>& ads, const Vec8& v) {
  std::vector<Vec8> rows;
  rows.reserve(ads.size());
  for (const auto& a : ads) rows.push_back(mat_vec(a, v));
  return rows;
}

}  // namespace

Subspace orbit_tangent(const Subspace& h) {
  std::vector<LieElt> gens;
  for (const auto& x : h.lie_basis()) gens.push_back(split(x).second);
  return Subspace::span_elts(gens);
}

Subspace isotropy(const Subspace& h) {
  return intersect(h, StructureContext::get().k());
}

Subspace normal_space(const Subspace& h) {
  const auto& ctx = StructureContext::get();
  return ortho_complement_in(orbit_tangent(h), ctx.p(), ctx.gram_std());
}

int cohomogeneity(const Subspace& h) {
  Subspace nu = normal_space(h);
  Subspace iso = isotropy(h);
  if (nu.dim() == 0) return 0;
  // [h∩k, v] is an isotropy-orbit tangent inside the sphere of ν, so its
  // dimension is capped both by dim(h∩k) and by dim ν - 1.
  int bound = std::min(iso.dim(), nu.dim() - 1);
  if (bound == 0) return nu.dim();
  auto ads = ad_of_basis(iso);
  int best = 0;
  for (const auto& coeff : coefficient_sweep(nu.dim())) {
    int d = Subspace::span(moved_rows(ads, combine(nu.basis(), coeff))).dim();
    if (d > best) best = d;
    if (best == bound) break;
  }
  return nu.dim() - best;
}

PolarityReport is_polar_with_section(const Subspace& h, const Subspace& s) {
  const auto& ctx = StructureContext::get();
  PolarityReport r;

  r.closure = is_subalgebra(h);
  r.h_closed = r.closure.closed;
  if (!r.h_closed) {
    r.reason = "h is not closed under the bracket";
    return r;
  }

  Subspace tangent = orbit_tangent(h);
  Subspace iso = isotropy(h);
  Subspace nu = normal_space(h);
  r.orbit_dim = tangent.dim();
  r.isotropy_dim = iso.dim();
  r.normal_dim = nu.dim();
  r.cohom = cohomogeneity(h);

  r.section_in_normal = s.dim() > 0 && nu.contains(s);
  if (!r.section_in_normal) {
    r.reason = s.dim() == 0 ? "section is the zero subspace"
                            : "section is not contained in the normal space";
    return r;
  }

  r.slice_dimension_ok = s.dim() == r.cohom;

  // Transversality: for some swept v in s the isotropy sweep [h∩k, v]
  // complements s inside the normal space.  A complement must have dimension
  // exactly dim ν - dim s, so other tuples are skipped cheaply.
  const int needed = nu.dim() - s.dim();
  auto ads = ad_of_basis(iso);
  for (const auto& coeff : coefficient_sweep(s.dim())) {
    Subspace moved = Subspace::span(moved_rows(ads, combine(s.basis(), coeff)));
    if (moved.dim() != needed) continue;
    if (!nu.contains(moved)) continue;  // cannot happen for closed h; guard anyway
    if (intersect(moved, s).dim() == 0 && sum(moved, s) == nu) {
      r.slice_transversal = true;
      break;
    }
  }

  r.section_real = is_real(s, ctx.j_std(), ctx.gram_std());
  r.section_complex = is_complex(s, ctx.j_std());
  r.section_rejected = !r.section_real && !r.section_complex;

  r.bracket_orthogonal = true;
  auto s_basis = s.lie_basis();
  auto h_basis = h.lie_basis();
  for (size_t i = 0; i < s_basis.size(); ++i)
    for (size_t j = i + 1; j < s_basis.size(); ++j) {
      LieElt br = bracket(s_basis[i], s_basis[j]);
      for (size_t k = 0; k < h_basis.size(); ++k) {
        QSqrt3 res = inner(br, h_basis[k]);
        if (!res.is_zero()) {
          r.bracket_orthogonal = false;
          r.bracket_witnesses.push_back({static_cast<int>(i), static_cast<int>(j),
                                         static_cast<int>(k), res});
        }
      }
    }

  r.verdict = r.slice_dimension_ok && r.slice_transversal && !r.section_rejected &&
              r.bracket_orthogonal;
  if (!r.verdict) {
    if (!r.slice_dimension_ok)
      r.reason = "section dimension differs from the cohomogeneity";
    else if (!r.slice_transversal)
      r.reason = "section is not transversal to the isotropy sweep";
    else if (r.section_rejected)
      r.reason = "section plane is neither totally real nor complex";
    else
      r.reason = "bracket of section vectors is not orthogonal to h";
  }
  return r;
}

}  // namespace polarch2

#include "polarch2/catalog.hpp"

namespace polarch2 {

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    const StructureContext& c = StructureContext::get();
    const LieElt pU1 = c.U1() - c.thetaU1();
    const LieElt pU2 = c.U2() - c.thetaU2();
    const LieElt pZ = c.Z() - c.thetaZ();
    std::vector<CatalogEntry> v;
    v.push_back({"i.a", "maximal compact subalgebra",
                 c.k(), Subspace::span_elts({c.B()}), 1});
    v.push_back({"i.b", "four-dimensional algebra spanned by theta(Z), B, T, Z",
                 Subspace::span_elts({c.thetaZ(), c.B(), c.T(), c.Z()}),
                 Subspace::span_elts({pU1}), 1});
    v.push_back({"i.c", "copy of so(1,2) spanned by B, U1, theta(U1)",
                 Subspace::span_elts({c.B(), c.U1(), c.thetaU1()}),
                 Subspace::span_elts({pU2}), 1});
    v.push_back({"i.d1", "rotation T plus the nilpotent part",
                 Subspace::span_elts({c.T(), c.U1(), c.U2(), c.Z()}),
                 Subspace::span_elts({c.B()}), 1});
    v.push_back({"i.d2", "nilpotent part, spanned by U1, U2, Z",
                 c.n(), Subspace::span_elts({c.B()}), 1});
    v.push_back({"i.e", "solvable algebra spanned by B, U1, Z",
                 Subspace::span_elts({c.B(), c.U1(), c.Z()}),
                 Subspace::span_elts({pU2}), 1});
    v.push_back({"ii.a", "abelian algebra spanned by T and Z + theta(Z)",
                 Subspace::span_elts({c.T(), c.Z() + c.thetaZ()}),
                 Subspace::span_elts({c.B(), pU1}), 2});
    v.push_back({"ii.b", "zero-root space, spanned by B and T",
                 c.g0(), Subspace::span_elts({pU1, pZ}), 2});
    v.push_back({"ii.c", "abelian algebra spanned by T and Z",
                 Subspace::span_elts({c.T(), c.Z()}),
                 Subspace::span_elts({c.B(), pU1}), 2});
    v.push_back({"ii.d", "abelian algebra spanned by U1 and Z",
                 Subspace::span_elts({c.U1(), c.Z()}),
                 Subspace::span_elts({c.B(), pU2}), 2});
    return v;
  }();
  return entries;
}

const std::vector<NegativeEntry>& negative_catalog() {
  static const std::vector<NegativeEntry> entries = [] {
    const StructureContext& c = StructureContext::get();
    const LieElt pU1 = c.U1() - c.thetaU1();
    const LieElt pU2 = c.U2() - c.thetaU2();
    std::vector<NegativeEntry> v;
    v.push_back({"non-closed",
                 "span of T, U1, U2 misses the bracket [U1, U2] = Z",
                 Subspace::span_elts({c.T(), c.U1(), c.U2()}),
                 Subspace::span_elts({c.B()}), FailureKind::closure});
    // This h does act polarly, just with cohomogeneity one; handing it a
    // two-dimensional candidate trips the dimension check.
    v.push_back({"cohom-mismatch",
                 "span of T, B, Z paired with a plane one dimension too big",
                 Subspace::span_elts({c.T(), c.B(), c.Z()}),
                 Subspace::span_elts({pU1, pU2}), FailureKind::slice_dimension});
    v.push_back({"bracket-residual",
                 "span of T + B and Z: section brackets fail orthogonality",
                 Subspace::span_elts({c.T() + c.B(), c.Z()}),
                 Subspace::span_elts({pU1, pU2}), FailureKind::bracket});
    return v;
  }();
  return entries;
}

EntryResult verify_entry(const CatalogEntry& e) {
  EntryResult r;
  r.id = e.id;
  r.expected_cohom = e.expected_cohom;
  r.report = is_polar_with_section(e.h, e.s);
  r.cohom_ok = r.report.h_closed && r.report.cohom == e.expected_cohom;
  r.ok = r.report.verdict && r.cohom_ok;
  return r;
}

std::vector<EntryResult> verify_catalog() {
  std::vector<EntryResult> out;
  out.reserve(catalog().size());
  for (const CatalogEntry& e : catalog()) out.push_back(verify_entry(e));
  return out;
}

NegativeResult verify_negative(const NegativeEntry& e) {
  NegativeResult r;
  r.id = e.id;
  r.report = is_polar_with_section(e.h, e.s);
  bool right_mode = false;
  switch (e.expected) {
    case FailureKind::closure:
      right_mode = !r.report.h_closed;
      break;
    case FailureKind::slice_dimension:
      right_mode = r.report.h_closed && !r.report.slice_dimension_ok;
      break;
    case FailureKind::bracket:
      right_mode = r.report.h_closed && r.report.slice_dimension_ok &&
                   r.report.slice_transversal && !r.report.bracket_orthogonal;
      break;
  }
  r.failed_as_expected = !r.report.verdict && right_mode;
  return r;
}

std::vector<NegativeResult> verify_negative_catalog() {
  std::vector<NegativeResult> out;
  out.reserve(negative_catalog().size());
  for (const NegativeEntry& e : negative_catalog()) out.push_back(verify_negative(e));
  return out;
}

std::vector<CatalogEntry> catalog_with_injected_fault() {
  std::vector<CatalogEntry> v = catalog();
  const StructureContext& c = StructureContext::get();
  for (CatalogEntry& e : v) {
    if (e.id == "ii.b") {
      e.s = Subspace::span_elts(
          {c.U1() - c.thetaU1(), c.U2() - c.thetaU2()});
      e.description += " [section deliberately replaced by a wrong plane]";
    }
  }
  return v;
}

std::array<int, 3> killing_signature(const Subspace& h) {
  const std::vector<LieElt> b = h.lie_basis();
  const int n = static_cast<int>(b.size());
  std::vector<std::vector<QSqrt3>> m(n, std::vector<QSqrt3>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m[i][j] = m[j][i] = killing(b[i], b[j]);
  return signature_of_form(std::move(m));
}

}  // namespace polarch2

#include "doctest.h"

#include "polarch2/catalog.hpp"

#include <set>

using namespace polarch2;

namespace {

const StructureContext& ctx() { return StructureContext::get(); }

GroupElt pi_third_rotation() {
  const QSqrt3 c{Rational(1) / 2};
  const QSqrt3 s = QSqrt3(Rational(1) / 2) * QSqrt3::sqrt3();
  Mat3 g;
  g(0, 0) = ExactScalar(1);
  g(1, 1) = ExactScalar(c);
  g(1, 2) = ExactScalar(s);
  g(2, 1) = ExactScalar(-s);
  g(2, 2) = ExactScalar(c);
  return GroupElt(g);
}

using Sig = std::array<int, 3>;

}  // namespace

TEST_CASE("inertia of small symmetric forms") {
  CHECK(signature_of_form({}) == Sig{0, 0, 0});
  CHECK(signature_of_form({{QSqrt3(5)}}) == Sig{1, 0, 0});
  CHECK(signature_of_form({{QSqrt3::sqrt3()}}) == Sig{1, 0, 0});
  CHECK(signature_of_form({{QSqrt3(Rational(1), Rational(-1))}}) == Sig{0, 1, 0});
  CHECK(signature_of_form({{QSqrt3(0)}}) == Sig{0, 0, 1});

  // hyperbolic pair: no nonzero diagonal to pivot on
  CHECK(signature_of_form({{QSqrt3(0), QSqrt3(-6)}, {QSqrt3(-6), QSqrt3(0)}}) ==
        Sig{1, 1, 0});
  CHECK(signature_of_form({{QSqrt3(3), QSqrt3(0)}, {QSqrt3(0), QSqrt3(-4)}}) ==
        Sig{1, 1, 0});
  CHECK(signature_of_form({{QSqrt3(0), QSqrt3(0)}, {QSqrt3(0), QSqrt3(5)}}) ==
        Sig{1, 0, 1});

  // duplicated row gives a radical direction next to a hyperbolic block
  std::vector<std::vector<QSqrt3>> m = {
      {QSqrt3(2), QSqrt3(1), QSqrt3(2)},
      {QSqrt3(1), QSqrt3(0), QSqrt3(1)},
      {QSqrt3(2), QSqrt3(1), QSqrt3(2)}};
  CHECK(signature_of_form(m) == Sig{1, 1, 1});
}

TEST_CASE("catalog shape: ids, dimensions, expected cohomogeneities") {
  const auto& cat = catalog();
  REQUIRE(cat.size() == 10);

  const std::vector<std::string> ids = {"i.a",  "i.b",  "i.c",  "i.d1", "i.d2",
                                        "i.e",  "ii.a", "ii.b", "ii.c", "ii.d"};
  const std::vector<int> h_dims = {4, 4, 3, 4, 3, 3, 2, 2, 2, 2};
  std::set<std::string> seen;
  for (size_t i = 0; i < cat.size(); ++i) {
    CHECK(cat[i].id == ids[i]);
    CHECK(cat[i].h.dim() == h_dims[i]);
    CHECK(cat[i].s.dim() == cat[i].expected_cohom);
    CHECK(cat[i].expected_cohom == (cat[i].id[1] == '.' ? 1 : 2));
    seen.insert(cat[i].id);
  }
  CHECK(seen.size() == cat.size());
}

TEST_CASE("every catalog pair verifies with the expected cohomogeneity") {
  for (const EntryResult& r : verify_catalog()) {
    INFO("entry ", r.id, ": ", r.report.reason);
    CHECK(r.ok);
    CHECK(r.cohom_ok);
    CHECK(r.report.verdict);
    CHECK(r.report.h_closed);
    CHECK(r.report.section_in_normal);
    CHECK(r.report.slice_dimension_ok);
    CHECK(r.report.slice_transversal);
    CHECK(r.report.section_real);  // every listed section is totally real
    CHECK(!r.report.section_rejected);
    CHECK(r.report.bracket_orthogonal);
    CHECK(r.report.bracket_witnesses.empty());
    CHECK(r.report.reason.empty());
    CHECK(r.report.cohom == r.expected_cohom);
    CHECK(r.report.orbit_dim + r.report.normal_dim == 4);
  }
}

TEST_CASE("negative list fails for the advertised reasons") {
  const auto results = verify_negative_catalog();
  REQUIRE(results.size() == 3);
  for (const NegativeResult& r : results) {
    INFO("entry ", r.id);
    CHECK(r.failed_as_expected);
    CHECK(!r.report.verdict);
  }

  const NegativeResult& open = results[0];
  CHECK(open.id == "non-closed");
  CHECK(!open.report.h_closed);
  // the leak is [U1, U2] = Z up to basis scaling
  CHECK(Subspace::span_elts({open.report.closure.witness}).dim() == 1);
  CHECK(Subspace::span_elts({ctx().Z()}).contains(open.report.closure.witness));

  const NegativeResult& wide = results[1];
  CHECK(wide.id == "cohom-mismatch");
  CHECK(wide.report.h_closed);
  CHECK(wide.report.cohom == 1);
  CHECK(wide.report.section_in_normal);
  CHECK(!wide.report.slice_dimension_ok);
  CHECK(wide.report.reason == "section dimension differs from the cohomogeneity");

  const NegativeResult& skew = results[2];
  CHECK(skew.id == "bracket-residual");
  CHECK(skew.report.h_closed);
  CHECK(skew.report.slice_dimension_ok);
  CHECK(skew.report.slice_transversal);
  CHECK(skew.report.section_complex);  // the plane itself is fine, h is not
  CHECK(!skew.report.bracket_orthogonal);
  CHECK(!skew.report.bracket_witnesses.empty());
  CHECK(skew.report.reason == "bracket of section vectors is not orthogonal to h");
}

TEST_CASE("ad-trace form signatures distinguish the subalgebra types") {
  const auto& c = ctx();
  CHECK(killing_signature(Subspace::full()) == Sig{4, 4, 0});
  CHECK(killing_signature(c.k()) == Sig{0, 4, 0});

  Subspace h_ib = Subspace::span_elts({c.thetaZ(), c.B(), c.T(), c.Z()});
  CHECK(killing_signature(h_ib) == Sig{2, 2, 0});

  Subspace h_ic = Subspace::span_elts({c.B(), c.U1(), c.thetaU1()});
  CHECK(killing_signature(h_ic) == Sig{2, 1, 0});

  CHECK(killing_signature(c.n()) == Sig{0, 0, 3});
  CHECK(killing_signature(Subspace::span_elts({c.T(), c.Z()})) == Sig{0, 1, 1});
}

TEST_CASE("verification is covariant under an exact stabilizer rotation") {
  const auto& c = ctx();
  const Mat8 ad_g = Ad_matrix(pi_third_rotation());

  const CatalogEntry& e = catalog()[8];  // ii.c
  REQUIRE(e.id == "ii.c");
  Subspace h = image(ad_g, e.h);
  Subspace s = image(ad_g, e.s);
  CHECK(h != e.h);  // the rotation genuinely moves the pair

  PolarityReport r = is_polar_with_section(h, s);
  CHECK(r.verdict);
  CHECK(r.cohom == e.expected_cohom);
  CHECK(r.section_real);
  CHECK(killing_signature(h) == killing_signature(e.h));
}

TEST_CASE("injected fault is caught and reported") {
  const auto faulty = catalog_with_injected_fault();
  REQUIRE(faulty.size() == catalog().size());

  int bad = 0;
  for (const CatalogEntry& e : faulty) {
    EntryResult r = verify_entry(e);
    if (e.id != "ii.b") {
      CHECK(r.ok);
      continue;
    }
    ++bad;
    CHECK(!r.ok);
    CHECK(r.report.h_closed);
    CHECK(r.report.section_in_normal);
    CHECK(r.report.slice_dimension_ok);    // dimensions agree, geometry does not
    CHECK(!r.report.slice_transversal);
    CHECK(!r.report.bracket_orthogonal);
    CHECK(!r.report.bracket_witnesses.empty());
    CHECK(r.report.reason == "section is not transversal to the isotropy sweep");
  }
  CHECK(bad == 1);
}

#include "polarch2/report.hpp"

#include "doctest.h"

#include <string>

using namespace polarch2;

namespace {

const StructureContext& ctx() { return StructureContext::get(); }

template <typename Fn>
void expect_config_error(Fn&& fn, const std::string& needle) {
  try {
    fn();
    FAIL_CHECK("expected a ConfigError mentioning \"" << needle << "\"");
  } catch (const ConfigError& e) {
    CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos,
                  "message was: " << e.what());
  }
}

}  // namespace

TEST_CASE("canonical descriptions render exact combinations") {
  CHECK(describe_canonical(ctx().B()) == "B");
  CHECK(describe_canonical(QSqrt3(Rational(1, 2)) * ctx().U1()) == "1/2 U1");
  CHECK(describe_canonical(ctx().U1() - ctx().thetaU1()) ==
        "-theta(U1) + U1");
  CHECK(describe_canonical(LieElt{}) == "0");
  CHECK(describe_canonical(QSqrt3::sqrt3() * ctx().B()).find("s3") !=
        std::string::npos);

  CHECK(describe_subspace(ctx().g0()) == "span{T, B}");
  CHECK(describe_subspace(Subspace{}) == "0");
  // Display normalization: the leading canonical coefficient becomes 1.
  CHECK(describe_subspace(Subspace::span_elts({QSqrt3(7) * ctx().Z()})) ==
        "span{Z}");
}

TEST_CASE("structure report is fully green") {
  const Json st = structure_report(25, 7);
  CHECK(st["ok"] == true);
  CHECK(st["root_space_dims"] == Json::array({1, 2, 2, 2, 1}));
  CHECK(st["dims_ok"] == true);
  CHECK(st["theta_pairing_ok"] == true);
  CHECK(st["bracket_inclusions_ok"] == true);
  CHECK(st["inner_B_B"] == "1");
  CHECK(st["inner_Z_Z"] == "2");
  CHECK(st["gram_ok"] == true);
  CHECK(st["product_rule_tuples"] == 25);
  CHECK(st["product_rule_failures"] == 0);
  CHECK(st["trace_form_pairs"] == 64);
  CHECK(st["trace_form_ok"] == true);
}

TEST_CASE("catalog and counterexample reports summarize the exact suites") {
  const Json cat = catalog_report(catalog());
  CHECK(cat["ok"] == true);
  REQUIRE(cat["entries"].size() == 10);
  for (const Json& row : cat["entries"]) {
    CHECK(!row["id"].get<std::string>().empty());
    CHECK(row["verdict"] == true);
    CHECK(row["cohomogeneity"] == row["expected_cohomogeneity"]);
  }

  const Json neg = counterexample_report();
  CHECK(neg["ok"] == true);
  REQUIRE(neg["entries"].size() == 3);
  for (const Json& row : neg["entries"]) {
    CHECK(row["failed_as_expected"] == true);
    CHECK(row.contains("witness"));
  }

  const Json faulted = catalog_report(catalog_with_injected_fault());
  CHECK(faulted["ok"] == false);
  for (const Json& row : faulted["entries"])
    if (row["id"] == "ii.b") {
      CHECK(row["verdict"] == false);
      CHECK(row.contains("witnesses"));
    }
}

TEST_CASE("subspace parsing accepts coordinates, matrices, and exact strings") {
  const Json coords = Json::parse(R"({"coordinates": [
      [0, 0, 0, 1, 0, 0, 0, 0],
      [0, 0, 0, 0, "1", 0, 0, 0]]})");
  CHECK(subspace_from_json(coords, "test") == ctx().g0());

  const Json scaled = Json::parse(
      R"({"coordinates": [[0, 0, 0, 0, "0/1 + 1/2*s3", 0, 0, 0]]})");
  CHECK(subspace_from_json(scaled, "test") ==
        Subspace::span_elts({ctx().B()}));

  const Json fractions =
      Json::parse(R"({"coordinates": [[0, "-3/2", 0, 0, 0, "3/2", 0, 0]]})");
  CHECK(subspace_from_json(fractions, "test") ==
        Subspace::span_elts({ctx().U1() - ctx().thetaU1()}));

  Json mats;
  mats["matrices"] = Json::array();
  for (const LieElt* x : {&ctx().T(), &ctx().Z()}) {
    Json m = Json::array();
    for (int i = 0; i < 3; ++i) {
      Json row = Json::array();
      for (int j = 0; j < 3; ++j) {
        const ExactScalar& v = x->mat()(i, j);
        row.push_back(Json::array(
            {rational_to_string(v.re.a), rational_to_string(v.im.a)}));
      }
      m.push_back(row);
    }
    mats["matrices"].push_back(m);
  }
  CHECK(subspace_from_json(mats, "test") ==
        Subspace::span_elts({ctx().T(), ctx().Z()}));

  expect_config_error(
      [] { subspace_from_json(Json::parse(R"({"coordinates": [[1, 2]]})"), "f"); },
      "coordinates[0]");
  expect_config_error(
      [] { subspace_from_json(Json::parse(R"({"x": 1})"), "f"); },
      "coordinates");
  expect_config_error(
      [&mats, &coords] {
        Json both = coords;
        both["matrices"] = mats["matrices"];
        subspace_from_json(both, "f");
      },
      "exactly one");
  expect_config_error(
      [] {
        subspace_from_json(
            Json::parse(
                R"({"coordinates": [[0, 0, 0, "1/0x", 0, 0, 0, 0]]})"),
            "f");
      },
      "coordinates[0][3]");
  expect_config_error(
      [] {
        subspace_from_json(
            Json::parse(R"({"coordinates": [[0, 0, 0, 0, 0, 0, 0, 0]]})"),
            "f");
      },
      "zero subspace");
  expect_config_error(
      [] {
        // The identity is Hermitian, not anti-Hermitian: rejected on intake.
        subspace_from_json(Json::parse(R"({"matrices": [[
            [[1, 0], [0, 0], [0, 0]],
            [[0, 0], [1, 0], [0, 0]],
            [[0, 0], [0, 0], [1, 0]]]]})"),
                           "f");
      },
      "not in the algebra");
}

TEST_CASE("check report carries the polarity fields") {
  const Subspace s =
      Subspace::span_elts({ctx().U1() - ctx().thetaU1(),
                           ctx().Z() - ctx().thetaZ()});
  const Json good = check_report(ctx().g0(), s);
  CHECK(good["verdict"] == true);
  CHECK(good["h"] == "span{T, B}");
  CHECK(good["section_dim"] == 2);
  CHECK(good["cohomogeneity"] == 2);
  CHECK(good["section_totally_real"] == true);
  CHECK_FALSE(good.contains("witnesses"));

  const Subspace bad_h =
      Subspace::span_elts({ctx().T() + ctx().B(), ctx().Z()});
  const Subspace p_alpha =
      Subspace::span_elts({ctx().U1() - ctx().thetaU1(),
                           ctx().U2() - ctx().thetaU2()});
  const Json bad = check_report(bad_h, p_alpha);
  CHECK(bad["verdict"] == false);
  CHECK(bad.contains("reason"));
  CHECK(bad.contains("witnesses"));
}

TEST_CASE("verify report is deterministic and renders in all formats") {
  VerifyConfig cfg;
  cfg.samples = 4;
  cfg.seed = 11;
  cfg.tuples = 10;
  const Json a = build_verify_report(cfg);
  const Json b = build_verify_report(cfg);
  CHECK(a.dump() == b.dump());
  CHECK(report_ok(a));
  CHECK(a["config"]["samples"] == 4);
  CHECK(a["config"]["seed"] == 11);

  const std::string text = render_text(a);
  CHECK(text.find("overall: PASS") != std::string::npos);
  CHECK(text.find("i.d2") != std::string::npos);
  const std::string md = render_markdown(a);
  CHECK(md.find("| i.a |") != std::string::npos);
  CHECK(md.find("**overall: PASS**") != std::string::npos);

  cfg.inject_fault = true;
  const Json faulted = build_verify_report(cfg);
  CHECK_FALSE(report_ok(faulted));
  CHECK(render_text(faulted).find("overall: FAIL") != std::string::npos);
  CHECK(render_markdown(faulted).find("**not polar**") != std::string::npos);
}

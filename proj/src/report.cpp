#include "polarch2/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace polarch2 {

namespace {

const char* kCanonicalNames[8] = {"theta(Z)", "theta(U1)", "theta(U2)",
                                  "T",        "B",         "U1",
                                  "U2",       "Z"};

std::string pretty(const QSqrt3& q) {
  if (q.is_rational()) {
    std::string s = rational_to_string(q.a);
    if (s.ends_with("/1")) s.resize(s.size() - 2);
    return s;
  }
  return q.to_string();
}

std::string fmt_double(double v, const char* spec = "%.3e") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

QSqrt3 mat8_product_trace(const Mat8& x, const Mat8& y) {
  QSqrt3 tr;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (x[i][j].is_zero() || y[j][i].is_zero()) continue;
      tr = tr + x[i][j] * y[j][i];
    }
  return tr;
}

Json witness_json(const std::vector<BracketWitness>& ws, const Subspace& s,
                  const Subspace& h) {
  const auto sb = s.lie_basis();
  const auto hb = h.lie_basis();
  Json out = Json::array();
  for (const BracketWitness& w : ws) {
    Json row;
    row["i"] = w.i;
    row["j"] = w.j;
    row["k"] = w.k;
    row["residual"] = pretty(w.residual);
    row["detail"] = "<[" + describe_canonical(sb[w.i]) + ", " +
                    describe_canonical(sb[w.j]) + "], " +
                    describe_canonical(hb[w.k]) + "> = " + pretty(w.residual);
    out.push_back(std::move(row));
  }
  return out;
}

Json polarity_json(const PolarityReport& p, const Subspace& h,
                   const Subspace& s) {
  Json r;
  r["h_closed"] = p.h_closed;
  if (!p.h_closed) {
    const auto hb = h.lie_basis();
    r["closure_witness"] = "[" + describe_canonical(hb[p.closure.i]) + ", " +
                           describe_canonical(hb[p.closure.j]) + "] = " +
                           describe_canonical(p.closure.witness) +
                           " leaves the span";
  }
  r["orbit_dim"] = p.orbit_dim;
  r["isotropy_dim"] = p.isotropy_dim;
  r["normal_dim"] = p.normal_dim;
  r["cohomogeneity"] = p.cohom;
  r["section_in_normal"] = p.section_in_normal;
  r["slice_dimension_ok"] = p.slice_dimension_ok;
  r["slice_transversal"] = p.slice_transversal;
  r["section_totally_real"] = p.section_real;
  r["section_complex"] = p.section_complex;
  r["brackets_orthogonal"] = p.bracket_orthogonal;
  if (!p.bracket_witnesses.empty())
    r["witnesses"] = witness_json(p.bracket_witnesses, s, h);
  r["verdict"] = p.verdict;
  if (!p.reason.empty()) r["reason"] = p.reason;
  return r;
}

Json branch_json(const BranchCounts& b) {
  Json j;
  j["accepted"] = b.accepted;
  j["rejected"] = b.rejected;
  j["failures"] = b.failures;
  if (!b.first_failure.empty()) j["first_failure"] = b.first_failure;
  return j;
}

Json grid_json(const GridSpec& grid) {
  Json axes = Json::array();
  for (const GridAxis& a : grid.axes)
    axes.push_back({{"lo", a.lo}, {"hi", a.hi}, {"n", a.n}});
  return axes;
}

}  // namespace

std::string describe_canonical(const LieElt& x) {
  const auto c = StructureContext::get().canonical_coords(x);
  std::string out;
  for (int i = 0; i < 8; ++i) {
    if (c[i].is_zero()) continue;
    QSqrt3 v = c[i];
    const bool neg = v.sign() < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (neg) v = -v;
    const std::string coeff = pretty(v);
    if (coeff == "1") {
      out += kCanonicalNames[i];
    } else if (coeff.find_first_of("+*") == std::string::npos) {
      out += coeff + " " + kCanonicalNames[i];
    } else {
      out += "(" + coeff + ") " + kCanonicalNames[i];
    }
  }
  return out.empty() ? "0" : out;
}

std::string describe_subspace(const Subspace& s) {
  if (s.dim() == 0) return "0";
  const StructureContext& ctx = StructureContext::get();
  std::string out = "span{";
  bool first = true;
  for (const LieElt& x : s.lie_basis()) {
    if (!first) out += ", ";
    // Scale so the leading canonical coordinate is 1; the stored rows carry
    // whatever normalization elimination produced.
    LieElt y = x;
    for (const QSqrt3& c : ctx.canonical_coords(x))
      if (!c.is_zero()) {
        y = c.inverse() * x;
        break;
      }
    out += describe_canonical(y);
    first = false;
  }
  return out + "}";
}

Json structure_report(int tuples, std::uint64_t seed) {
  const StructureContext& c = StructureContext::get();
  Json r;

  const std::array<int, 5> dims = {c.g_m2alpha().dim(), c.g_malpha().dim(),
                                   c.g0().dim(), c.g_alpha().dim(),
                                   c.g_2alpha().dim()};
  r["root_space_dims"] = dims;
  const bool dims_ok = dims == std::array<int, 5>{1, 2, 2, 2, 1};
  r["dims_ok"] = dims_ok;

  const auto maps_into = [](const Subspace& src, const Subspace& dst) {
    for (const LieElt& x : src.lie_basis())
      if (!dst.contains(cartan_theta(x))) return false;
    return true;
  };
  const bool theta_ok = maps_into(c.g_alpha(), c.g_malpha()) &&
                        maps_into(c.g_malpha(), c.g_alpha()) &&
                        maps_into(c.g_2alpha(), c.g_m2alpha()) &&
                        maps_into(c.g_m2alpha(), c.g_2alpha()) &&
                        maps_into(c.g0(), c.g0());
  r["theta_pairing_ok"] = theta_ok;

  // Every canonical basis element lives in one eigenspace; a bracket must
  // land in the space for the summed eigenvalue, or vanish when that leaves
  // the ladder.
  static const int weight[8] = {-2, -1, -1, 0, 0, 1, 1, 2};
  const auto space_of = [&c](int w) -> const Subspace& {
    switch (w) {
      case -2: return c.g_m2alpha();
      case -1: return c.g_malpha();
      case 0: return c.g0();
      case 1: return c.g_alpha();
      default: return c.g_2alpha();
    }
  };
  bool incl_ok = true;
  for (int i = 0; i < 8 && incl_ok; ++i)
    for (int j = 0; j < 8 && incl_ok; ++j) {
      const LieElt br = bracket(c.basis()[i], c.basis()[j]);
      const int w = weight[i] + weight[j];
      incl_ok = (w < -2 || w > 2) ? br.is_zero() : space_of(w).contains(br);
    }
  r["bracket_inclusions_ok"] = incl_ok;

  const QSqrt3 bb = inner(c.B(), c.B());
  const QSqrt3 zz = inner(c.Z(), c.Z());
  r["inner_B_B"] = pretty(bb);
  r["inner_Z_Z"] = pretty(zz);
  const bool gram_ok = bb == QSqrt3(1) && zz == QSqrt3(2);
  r["gram_ok"] = gram_ok;

  // Product rule of the solvable model on random rational tuples:
  //   [aB+U+xZ, bB+V+yZ] = -(b/2)U + (a/2)V + (-bx + ay + <JU,V>/2) Z
  // with U, V in the alpha-space and J acting there as the rotation [T, .].
  std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ull);
  const auto rat = [&eng]() {
    const long long num = static_cast<long long>(eng() % 13) - 6;
    const long long den = 1 + static_cast<long long>(eng() % 4);
    return QSqrt3(Rational(num, den));
  };
  const QSqrt3 half(Rational(1, 2));
  int failures = 0;
  for (int t = 0; t < tuples; ++t) {
    const QSqrt3 a = rat(), x = rat(), u1 = rat(), u2 = rat();
    const QSqrt3 b = rat(), y = rat(), v1 = rat(), v2 = rat();
    const LieElt U = u1 * c.U1() + u2 * c.U2();
    const LieElt V = v1 * c.U1() + v2 * c.U2();
    const LieElt lhs = bracket(a * c.B() + U + x * c.Z(), b * c.B() + V + y * c.Z());
    const QSqrt3 zc = -(b * x) + a * y + half * inner(bracket(c.T(), U), V);
    const LieElt rhs = -(half * b) * U + (half * a) * V + zc * c.Z();
    if (!(lhs - rhs).is_zero()) ++failures;
  }
  r["product_rule_tuples"] = tuples;
  r["product_rule_failures"] = failures;
  const bool pr_ok = failures == 0;
  r["product_rule_ok"] = pr_ok;

  // Trace-form oracle: trace of the adjoint product against the scaled
  // matrix trace, on every basis pair.
  bool trace_ok = true;
  std::array<Mat8, 8> ads;
  for (int i = 0; i < 8; ++i) ads[i] = ad_matrix(c.basis()[i]);
  for (int i = 0; i < 8 && trace_ok; ++i)
    for (int j = 0; j < 8 && trace_ok; ++j)
      trace_ok = mat8_product_trace(ads[i], ads[j]) ==
                 killing(c.basis()[i], c.basis()[j]);
  r["trace_form_pairs"] = 64;
  r["trace_form_ok"] = trace_ok;

  r["seed"] = seed;
  r["ok"] = dims_ok && theta_ok && incl_ok && gram_ok && pr_ok && trace_ok;
  return r;
}

Json catalog_report(const std::vector<CatalogEntry>& entries) {
  Json rows = Json::array();
  bool all = true;
  for (const CatalogEntry& e : entries) {
    const EntryResult res = verify_entry(e);
    const PolarityReport& p = res.report;
    Json row = polarity_json(p, e.h, e.s);
    row["id"] = e.id;
    row["algebra"] = e.description;
    row["section"] = describe_subspace(e.s);
    row["expected_cohomogeneity"] = e.expected_cohom;
    row["cohomogeneity_ok"] = res.cohom_ok;
    row["ok"] = res.ok;
    all = all && res.ok;
    rows.push_back(std::move(row));
  }
  return Json{{"entries", rows}, {"ok", all}};
}

Json counterexample_report() {
  static const char* kind_names[] = {"closure", "slice_dimension", "bracket"};
  Json rows = Json::array();
  bool all = true;
  const auto& negatives = negative_catalog();
  for (size_t n = 0; n < negatives.size(); ++n) {
    const NegativeEntry& e = negatives[n];
    const NegativeResult res = verify_negative(e);
    const PolarityReport& p = res.report;
    Json row;
    row["id"] = e.id;
    row["description"] = e.description;
    row["expected_failure"] = kind_names[static_cast<int>(e.expected)];
    row["failed_as_expected"] = res.failed_as_expected;
    row["verdict"] = p.verdict;
    if (!p.reason.empty()) row["reason"] = p.reason;
    switch (e.expected) {
      case FailureKind::closure:
        if (!p.h_closed) {
          const auto hb = e.h.lie_basis();
          row["witness"] = "[" + describe_canonical(hb[p.closure.i]) + ", " +
                           describe_canonical(hb[p.closure.j]) + "] = " +
                           describe_canonical(p.closure.witness) +
                           " leaves the span";
        }
        break;
      case FailureKind::slice_dimension:
        row["witness"] = "section dimension " + std::to_string(e.s.dim()) +
                         " against cohomogeneity " + std::to_string(p.cohom);
        break;
      case FailureKind::bracket:
        if (!p.bracket_witnesses.empty())
          row["witness"] = witness_json(p.bracket_witnesses, e.s, e.h)[0]["detail"];
        break;
    }
    all = all && res.failed_as_expected;
    rows.push_back(std::move(row));
  }
  return Json{{"entries", rows}, {"ok", all}};
}

Json lemma_report(int samples_per_branch, std::uint64_t seed) {
  const SuiteReport s = run_lemma_suite(samples_per_branch, seed);
  Json r;
  r["branches"] = Json{{"y_nonzero", branch_json(s.y_nonzero)},
                       {"y_zero_c0", branch_json(s.y_zero_c0)},
                       {"y_zero_x0", branch_json(s.y_zero_x0)},
                       {"y_zero_lambda", branch_json(s.y_zero_lambda)},
                       {"generic", branch_json(s.generic)}};
  Json imp;
  imp["residual_matches_norm"] = s.impossibility.residual_matches_norm;
  imp["residual_u1"] = pretty(s.impossibility.residual_u1);
  imp["real_iff_a_zero"] = s.impossibility.real_iff_a_zero;
  imp["complex_never"] = s.impossibility.complex_never;
  imp["k0_galpha_not_closed"] = s.impossibility.k0_galpha_not_closed;
  imp["k0_a_g2alpha_cohom_one"] = s.impossibility.k0_a_g2alpha_cohom_one;
  imp["ok"] = s.impossibility.ok;
  r["impossibility"] = imp;
  r["samples_per_branch"] = s.samples_per_branch;
  r["seed"] = s.seed;
  r["ok"] = s.ok;
  return r;
}

Json scan_report(const std::vector<CatalogEntry>& entries) {
  constexpr double kTol = 1e-8;
  Json rows = Json::array();
  bool all = true;
  for (const CatalogEntry& e : entries) {
    const GridSpec grid = default_section_grid(e.s.dim());
    Json row;
    row["id"] = e.id;
    row["grid"] = grid_json(grid);
    row["tolerance"] = kTol;
    bool row_ok = false;
    try {
      const double m = orthogonality_scan(e, grid);
      row["max_abs_cos"] = m;
      row_ok = m < kTol;
    } catch (const std::exception& err) {
      // The scan refuses entries that fail the exact criterion; record the
      // refusal instead of aborting the whole report.
      row["error"] = err.what();
    }
    row["ok"] = row_ok;
    all = all && row_ok;
    rows.push_back(std::move(row));
  }
  return Json{{"entries", rows}, {"ok", all}};
}

Json build_verify_report(const VerifyConfig& cfg) {
  const std::vector<CatalogEntry> entries =
      cfg.inject_fault ? catalog_with_injected_fault() : catalog();
  Json r;
  r["config"] = Json{{"samples", cfg.samples},
                     {"seed", cfg.seed},
                     {"tuples", cfg.tuples},
                     {"fault_injected", cfg.inject_fault}};
  r["structure"] = structure_report(cfg.tuples, cfg.seed);
  r["catalog"] = catalog_report(entries);
  r["counterexamples"] = counterexample_report();
  r["lemma_suite"] = lemma_report(cfg.samples, cfg.seed);
  r["orthogonality"] = scan_report(entries);
  r["ok"] = r["structure"]["ok"].get<bool>() && r["catalog"]["ok"].get<bool>() &&
            r["counterexamples"]["ok"].get<bool>() &&
            r["lemma_suite"]["ok"].get<bool>() &&
            r["orthogonality"]["ok"].get<bool>();
  return r;
}

bool report_ok(const Json& report) {
  return report.contains("ok") && report["ok"].is_boolean() &&
         report["ok"].get<bool>();
}

namespace {

const char* yn(bool b) { return b ? "yes" : "no"; }
const char* okfail(bool b) { return b ? "ok" : "FAIL"; }

void render_catalog_text(const Json& cat, std::ostringstream& out) {
  out << "catalog (" << okfail(cat["ok"].get<bool>()) << ")\n";
  for (const Json& row : cat["entries"]) {
    char head[64];
    std::snprintf(head, sizeof(head), "  [%s] %-5s cohom %d  %s\n",
                  okfail(row["ok"].get<bool>()),
                  row["id"].get<std::string>().c_str(),
                  row["cohomogeneity"].get<int>(),
                  row["verdict"].get<bool>() ? "polar" : "not polar");
    out << head;
    out << "        algebra: " << row["algebra"].get<std::string>() << "\n";
    out << "        section: " << row["section"].get<std::string>() << "\n";
    if (row.contains("reason"))
      out << "        reason:  " << row["reason"].get<std::string>() << "\n";
    if (row.contains("witnesses"))
      for (const Json& w : row["witnesses"])
        out << "        witness: " << w["detail"].get<std::string>() << "\n";
    if (row.contains("closure_witness"))
      out << "        witness: " << row["closure_witness"].get<std::string>()
          << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  const Json& st = report["structure"];
  out << "structure (" << okfail(st["ok"].get<bool>()) << ")\n";
  out << "  root-space dims " << st["root_space_dims"].dump() << ": "
      << okfail(st["dims_ok"].get<bool>()) << "\n";
  out << "  theta pairing: " << okfail(st["theta_pairing_ok"].get<bool>())
      << ", bracket inclusions: "
      << okfail(st["bracket_inclusions_ok"].get<bool>()) << "\n";
  out << "  <B,B> = " << st["inner_B_B"].get<std::string>() << ", <Z,Z> = "
      << st["inner_Z_Z"].get<std::string>() << ": "
      << okfail(st["gram_ok"].get<bool>()) << "\n";
  out << "  product rule on " << st["product_rule_tuples"].get<int>()
      << " random tuples: " << okfail(st["product_rule_ok"].get<bool>())
      << "\n";
  out << "  trace form on " << st["trace_form_pairs"].get<int>()
      << " basis pairs: " << okfail(st["trace_form_ok"].get<bool>()) << "\n";

  render_catalog_text(report["catalog"], out);

  const Json& cx = report["counterexamples"];
  out << "counterexamples (" << okfail(cx["ok"].get<bool>()) << ")\n";
  for (const Json& row : cx["entries"]) {
    out << "  [" << okfail(row["failed_as_expected"].get<bool>()) << "] "
        << row["id"].get<std::string>() << ": expected "
        << row["expected_failure"].get<std::string>() << " failure\n";
    if (row.contains("witness"))
      out << "        " << row["witness"].get<std::string>() << "\n";
  }

  const Json& lm = report["lemma_suite"];
  out << "closure sweep (" << okfail(lm["ok"].get<bool>()) << "), "
      << lm["samples_per_branch"].get<int>() << " samples per branch, seed "
      << lm["seed"].get<std::uint64_t>() << "\n";
  for (const auto& [name, b] : lm["branches"].items()) {
    out << "  " << name << ": " << b["accepted"].get<int>() << " accepted, "
        << b["rejected"].get<int>() << " rejected, "
        << b["failures"].get<int>() << " failures\n";
    if (b.contains("first_failure"))
      out << "        first failure: " << b["first_failure"].get<std::string>()
          << "\n";
  }
  out << "  impossibility checks: "
      << okfail(lm["impossibility"]["ok"].get<bool>()) << " (residual at U1 = "
      << lm["impossibility"]["residual_u1"].get<std::string>() << ")\n";

  const Json& sc = report["orthogonality"];
  out << "orthogonality scans (" << okfail(sc["ok"].get<bool>()) << ")\n";
  for (const Json& row : sc["entries"]) {
    out << "  [" << okfail(row["ok"].get<bool>()) << "] "
        << row["id"].get<std::string>() << ": ";
    if (row.contains("error"))
      out << "scan refused: " << row["error"].get<std::string>() << "\n";
    else
      out << "max |cos| = " << fmt_double(row["max_abs_cos"].get<double>())
          << " (tolerance "
          << fmt_double(row["tolerance"].get<double>(), "%.0e") << ")\n";
  }

  out << "overall: " << (report["ok"].get<bool>() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string render_markdown(const Json& report) {
  std::ostringstream out;
  out << "# verification report\n\n";

  out << "## catalog\n\n";
  out << "| id | algebra | section | in normal | slice | brackets | verdict |\n";
  out << "|----|---------|---------|-----------|-------|----------|--------|\n";
  for (const Json& row : report["catalog"]["entries"]) {
    const bool slice = row["slice_dimension_ok"].get<bool>() &&
                       row["slice_transversal"].get<bool>();
    out << "| " << row["id"].get<std::string>() << " | "
        << row["algebra"].get<std::string>() << " | "
        << row["section"].get<std::string>() << " | "
        << yn(row["section_in_normal"].get<bool>()) << " | " << yn(slice)
        << " | " << yn(row["brackets_orthogonal"].get<bool>()) << " | "
        << (row["verdict"].get<bool>() ? "polar" : "**not polar**") << " |\n";
  }

  out << "\n## counterexamples\n\n";
  for (const Json& row : report["counterexamples"]["entries"]) {
    out << "- **" << row["id"].get<std::string>() << "** ("
        << row["expected_failure"].get<std::string>() << "): "
        << (row["failed_as_expected"].get<bool>() ? "fails as expected"
                                                  : "UNEXPECTED result");
    if (row.contains("witness"))
      out << " -- " << row["witness"].get<std::string>();
    out << "\n";
  }

  const Json& st = report["structure"];
  out << "\n## structure\n\n";
  out << "- root-space dimensions " << st["root_space_dims"].dump() << " ("
      << okfail(st["dims_ok"].get<bool>()) << ")\n";
  out << "- theta pairing " << okfail(st["theta_pairing_ok"].get<bool>())
      << ", bracket inclusions "
      << okfail(st["bracket_inclusions_ok"].get<bool>()) << "\n";
  out << "- `<B,B> = " << st["inner_B_B"].get<std::string>() << "`, `<Z,Z> = "
      << st["inner_Z_Z"].get<std::string>() << "` ("
      << okfail(st["gram_ok"].get<bool>()) << ")\n";
  out << "- product rule on " << st["product_rule_tuples"].get<int>()
      << " tuples (" << okfail(st["product_rule_ok"].get<bool>()) << ")\n";
  out << "- trace form on " << st["trace_form_pairs"].get<int>() << " pairs ("
      << okfail(st["trace_form_ok"].get<bool>()) << ")\n";

  const Json& lm = report["lemma_suite"];
  out << "\n## closure sweep\n\n";
  out << "seed " << lm["seed"].get<std::uint64_t>() << ", "
      << lm["samples_per_branch"].get<int>() << " samples per branch ("
      << okfail(lm["ok"].get<bool>()) << ")\n\n";
  out << "| branch | accepted | rejected | failures |\n";
  out << "|--------|----------|----------|----------|\n";
  for (const auto& [name, b] : lm["branches"].items())
    out << "| " << name << " | " << b["accepted"].get<int>() << " | "
        << b["rejected"].get<int>() << " | " << b["failures"].get<int>()
        << " |\n";

  out << "\n## orthogonality scans\n\n";
  out << "| id | max abs cos | tolerance | ok |\n";
  out << "|----|-------------|-----------|----|\n";
  for (const Json& row : report["orthogonality"]["entries"])
    out << "| " << row["id"].get<std::string>() << " | "
        << (row.contains("error")
                ? "refused"
                : fmt_double(row["max_abs_cos"].get<double>()))
        << " | " << fmt_double(row["tolerance"].get<double>(), "%.0e") << " | "
        << yn(row["ok"].get<bool>()) << " |\n";

  out << "\n**overall: " << (report["ok"].get<bool>() ? "PASS" : "FAIL")
      << "**\n";
  return out.str();
}

namespace {

QSqrt3 parse_exact_entry(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return QSqrt3(Rational(v.get<long long>()));
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    try {
      if (s.find("s3") != std::string::npos) return QSqrt3::parse(s);
      s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
      if (s.empty()) throw std::invalid_argument("empty string");
      if (s.find('/') == std::string::npos) s += "/1";
      return QSqrt3(parse_rational(s));
    } catch (const std::exception& e) {
      throw ConfigError(where + ": cannot parse \"" + v.get<std::string>() +
                        "\" as an exact scalar (" + e.what() + ")");
    }
  }
  throw ConfigError(where + ": expected an integer or an exact string, got " +
                    v.dump());
}

std::vector<LieElt> parse_coordinate_rows(const Json& rows,
                                          const std::string& where) {
  if (!rows.is_array() || rows.empty())
    throw ConfigError(where + ": \"coordinates\" must be a non-empty array");
  const StructureContext& c = StructureContext::get();
  std::vector<LieElt> gens;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string at = where + ": coordinates[" + std::to_string(r) + "]";
    const Json& row = rows[r];
    if (!row.is_array() || row.size() != 8)
      throw ConfigError(at +
                        ": expected 8 entries over {theta(Z), theta(U1), "
                        "theta(U2), T, B, U1, U2, Z}");
    std::array<QSqrt3, 8> coords;
    for (std::size_t k = 0; k < 8; ++k)
      coords[k] = parse_exact_entry(row[k], at + "[" + std::to_string(k) + "]");
    gens.push_back(c.from_canonical(coords));
  }
  return gens;
}

std::vector<LieElt> parse_matrix_rows(const Json& mats,
                                      const std::string& where) {
  if (!mats.is_array() || mats.empty())
    throw ConfigError(where + ": \"matrices\" must be a non-empty array");
  std::vector<LieElt> gens;
  for (std::size_t r = 0; r < mats.size(); ++r) {
    const std::string at = where + ": matrices[" + std::to_string(r) + "]";
    const Json& rows = mats[r];
    if (!rows.is_array() || rows.size() != 3)
      throw ConfigError(at + ": expected 3 rows");
    Mat3 m;
    for (int i = 0; i < 3; ++i) {
      const Json& row = rows[i];
      if (!row.is_array() || row.size() != 3)
        throw ConfigError(at + "[" + std::to_string(i) +
                          "]: expected 3 entries");
      for (int j = 0; j < 3; ++j) {
        const Json& cell = row[j];
        const std::string cat =
            at + "[" + std::to_string(i) + "][" + std::to_string(j) + "]";
        if (!cell.is_array() || cell.size() != 2)
          throw ConfigError(cat + ": expected a [re, im] pair");
        m(i, j) = ExactScalar(parse_exact_entry(cell[0], cat + "[0]"),
                              parse_exact_entry(cell[1], cat + "[1]"));
      }
    }
    try {
      gens.emplace_back(m);
    } catch (const std::exception& e) {
      throw ConfigError(at + ": matrix is not in the algebra (" + e.what() +
                        ")");
    }
  }
  return gens;
}

}  // namespace

Subspace subspace_from_json(const Json& doc, const std::string& where) {
  if (!doc.is_object())
    throw ConfigError(where + ": expected a JSON object");
  const bool has_coords = doc.contains("coordinates");
  const bool has_mats = doc.contains("matrices");
  if (has_coords == has_mats)
    throw ConfigError(where +
                      ": need exactly one of \"coordinates\" or \"matrices\"");
  const std::vector<LieElt> gens =
      has_coords ? parse_coordinate_rows(doc["coordinates"], where)
                 : parse_matrix_rows(doc["matrices"], where);
  const Subspace s = Subspace::span_elts(gens);
  if (s.dim() == 0)
    throw ConfigError(where + ": the generators span only the zero subspace");
  return s;
}

Subspace load_subspace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open file");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const std::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return subspace_from_json(doc, path);
}

Json check_report(const Subspace& h, const Subspace& s) {
  const PolarityReport p = is_polar_with_section(h, s);
  Json r = polarity_json(p, h, s);
  r["h"] = describe_subspace(h);
  r["h_dim"] = h.dim();
  r["section"] = describe_subspace(s);
  r["section_dim"] = s.dim();
  return r;
}

}  // namespace polarch2

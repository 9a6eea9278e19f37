// Acceptance gate: one line per criterion, pass/fail with the measured
// runtime against the pinned budget.  The last criterion shells out to the
// command-line tool (path in argv[1]) and byte-compares two reports.

#include "polarch2/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace polarch2;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20260823;

struct Outcome {
  std::string name;
  bool pass = false;
  double seconds = 0;
  double budget = 0;  // 0 = no runtime bound
  std::string note;
};

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void note_if(bool ok, std::string& note, const std::string& text) {
  if (ok) return;
  if (!note.empty()) note += "; ";
  note += text;
}

// ---- criterion 1: exact structure suite -------------------------------

Outcome structure_suite() {
  Outcome o{"structure suite", false, 0, 1.0, ""};
  const Timer t;
  const Json st = structure_report(100, kSeed);
  o.seconds = t.seconds();
  note_if(st["dims_ok"].get<bool>(), o.note, "root-space dimensions off");
  note_if(st["theta_pairing_ok"].get<bool>(), o.note, "theta pairing broken");
  note_if(st["bracket_inclusions_ok"].get<bool>(), o.note,
          "bracket inclusion failed");
  note_if(st["gram_ok"].get<bool>(), o.note, "pinned Gram values off");
  note_if(st["product_rule_ok"].get<bool>() &&
              st["product_rule_tuples"].get<int>() == 100,
          o.note, "product rule failed on a random tuple");
  o.pass = o.note.empty();
  return o;
}

// ---- criterion 2: trace-form oracle -----------------------------------

Outcome trace_form_oracle() {
  Outcome o{"trace-form oracle", false, 0, 0, ""};
  const Timer t;
  const auto& basis = StructureContext::get().basis();
  std::array<Mat8, 8> ads;
  for (int i = 0; i < 8; ++i) ads[i] = ad_matrix(basis[i]);
  bool all = true;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      QSqrt3 tr;
      for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c) {
          if (ads[i][r][c].is_zero() || ads[j][c][r].is_zero()) continue;
          tr = tr + ads[i][r][c] * ads[j][c][r];
        }
      all = all && tr == killing(basis[i], basis[j]);
    }
  o.seconds = t.seconds();
  note_if(all, o.note, "ad-trace disagrees with the scaled matrix trace");
  o.pass = o.note.empty();
  return o;
}

// ---- criterion 3: the polarity criterion on the catalog ---------------

Subspace bracket_image(const Subspace& s) {
  const auto b = s.lie_basis();
  std::vector<LieElt> brs;
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i + 1; j < b.size(); ++j)
      brs.push_back(bracket(b[i], b[j]));
  return Subspace::span_elts(brs);
}

bool orthogonal_spaces(const Subspace& u, const Subspace& v) {
  for (const LieElt& x : u.lie_basis())
    for (const LieElt& y : v.lie_basis())
      if (!inner(x, y).is_zero()) return false;
  return true;
}

Outcome criterion_suite() {
  Outcome o{"criterion suite", false, 0, 1.0, ""};
  const Timer t;
  const StructureContext& c = StructureContext::get();

  for (const EntryResult& r : verify_catalog()) {
    note_if(r.report.verdict, o.note, r.id + " not verified");
    note_if(r.report.bracket_witnesses.empty(), o.note,
            r.id + " left a bracket residual");
    note_if(r.cohom_ok, o.note, r.id + " cohomogeneity off");
  }

  const Subspace g_ma_a = sum(c.g_malpha(), c.g_alpha());
  const CatalogEntry* bent = nullptr;
  const CatalogEntry* cent = nullptr;
  for (const CatalogEntry& e : catalog()) {
    if (e.id == "ii.b") bent = &e;
    if (e.id == "ii.c") cent = &e;
  }

  // The zero-root-space action: the section brackets onto the symmetrized
  // image of [theta of the real alpha-line, the top root line], inside the
  // two middle eigenspaces and orthogonal to the acting algebra.
  const Subspace ss_b = bracket_image(bent->s);
  const LieElt w = bracket(c.thetaU1(), c.Z());
  note_if(ss_b == Subspace::span_elts({c.U2() + c.thetaU2()}), o.note,
          "ii.b bracket image is not the symmetrized U2 line");
  note_if(ss_b == Subspace::span_elts({w + cartan_theta(w)}), o.note,
          "ii.b bracket image mismatch against the stated form");
  note_if(g_ma_a.contains(ss_b), o.note,
          "ii.b bracket image escapes the middle eigenspaces");
  note_if(orthogonal_spaces(ss_b, bent->h), o.note,
          "ii.b bracket image is not orthogonal to the acting algebra");

  // The flat-plus-top-root action: the section brackets onto the
  // symmetrized real alpha-line.
  const Subspace ss_c = bracket_image(cent->s);
  note_if(ss_c == Subspace::span_elts({c.U1() + c.thetaU1()}), o.note,
          "ii.c bracket image is not the symmetrized U1 line");
  note_if(g_ma_a.contains(ss_c), o.note,
          "ii.c bracket image escapes the middle eigenspaces");
  note_if(orthogonal_spaces(ss_c, cent->h), o.note,
          "ii.c bracket image is not orthogonal to the acting algebra");

  o.seconds = t.seconds();
  o.pass = o.note.empty();
  return o;
}

// ---- criterion 4: negative suite --------------------------------------

Outcome negative_suite() {
  Outcome o{"negative suite", false, 0, 0, ""};
  const Timer t;
  const StructureContext& c = StructureContext::get();

  for (const NegativeResult& r : verify_negative_catalog())
    note_if(r.failed_as_expected, o.note, r.id + " did not fail as expected");

  const SubalgebraCheck chk = is_subalgebra(sum(c.k0(), c.g_alpha()));
  note_if(!chk.closed && !chk.witness.is_zero(), o.note,
          "k0 + alpha-space closure check produced no witness");

  const ImpossibilityReport imp = impossibility_checks();
  note_if(imp.residual_u1 == QSqrt3(2), o.note,
          "obstruction residual at U1 is not exactly 2");
  note_if(imp.residual_matches_norm, o.note,
          "obstruction residual does not match the squared norm");
  note_if(imp.real_iff_a_zero, o.note,
          "candidate tangent space real away from a = 0");
  note_if(imp.complex_never, o.note, "candidate tangent space went complex");

  o.seconds = t.seconds();
  o.pass = o.note.empty();
  return o;
}

// ---- criterion 5: randomized closure sweep ----------------------------

Outcome lemma_suite() {
  Outcome o{"lemma suite", false, 0, 10.0, ""};
  const Timer t;
  const int n = 128;  // >= 100 accepted per constructed branch, >= 50 conjugations
  const SuiteReport r = run_lemma_suite(n, kSeed);
  o.seconds = t.seconds();
  note_if(r.ok, o.note, "sweep flagged a failure");
  const auto branch = [&](const BranchCounts& b, const char* name) {
    note_if(b.accepted >= 100 && b.failures == 0, o.note,
            std::string(name) + " below 100 accepted samples");
  };
  branch(r.y_nonzero, "y_nonzero");
  branch(r.y_zero_c0, "y_zero_c0");
  branch(r.y_zero_x0, "y_zero_x0");
  branch(r.y_zero_lambda, "y_zero_lambda");
  note_if(r.generic.failures == 0 &&
              r.generic.accepted + r.generic.rejected == n,
          o.note, "generic branch inconsistent");
  note_if(r.impossibility.ok, o.note, "impossibility checks failed");
  o.pass = o.note.empty();
  return o;
}

// ---- criterion 6: numerical suite -------------------------------------

struct Rand {
  std::mt19937_64 eng;
  explicit Rand(std::uint64_t seed) : eng(seed) {}
  double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
};

FMat3 random_group(Rand& rng) {
  const auto& basis = StructureContext::get().basis();
  FMat3 x{};
  for (int i = 0; i < 8; ++i) {
    const double ci = rng.range(-0.5, 0.5);
    const FMat3 bi = to_float(basis[i]);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) x(r, c) += ci * bi(r, c);
  }
  return expm(x);
}

BallPoint random_point(Rand& rng) {
  return BallPoint{{rng.range(-0.35, 0.35), rng.range(-0.35, 0.35)},
                   {rng.range(-0.35, 0.35), rng.range(-0.35, 0.35)}};
}

CTangent random_tangent(Rand& rng) {
  return CTangent{{rng.range(-1, 1), rng.range(-1, 1)},
                  {rng.range(-1, 1), rng.range(-1, 1)}};
}

double point_dist(const BallPoint& a, const BallPoint& b) {
  return std::sqrt(std::norm(a.z1 - b.z1) + std::norm(a.z2 - b.z2));
}

Outcome numerical_suite() {
  Outcome o{"numerical suite", false, 0, 60.0, ""};
  const Timer t;
  Rand rng(kSeed);

  bool action_ok = true, metric_ok = true, killing_ok = true;
  for (int i = 0; i < 50; ++i) {
    const FMat3 g = random_group(rng), h = random_group(rng);
    const BallPoint p = random_point(rng);
    action_ok = action_ok &&
                point_dist(act(g * h, p), act(g, act(h, p))) < 1e-8;

    const CTangent v = random_tangent(rng), w = random_tangent(rng);
    const double before = metric_inner(p, v, w);
    const double after =
        metric_inner(act(g, p), dact(g, p, v), dact(g, p, w));
    metric_ok = metric_ok &&
                std::abs(after - before) <= 1e-8 * std::max(1.0, std::abs(before));

    FMat3 x{};
    const auto& basis = StructureContext::get().basis();
    for (int k = 0; k < 8; ++k) {
      const double ck = rng.range(-1, 1);
      const FMat3 bk = to_float(basis[k]);
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) x(r, c) += ck * bk(r, c);
    }
    const CTangent kv = killing_vector(x, p);
    const double step = 1e-5;
    const BallPoint plus = act(expm(step * x), p);
    const BallPoint minus = act(expm(-step * x), p);
    const CD fd1 = (plus.z1 - minus.z1) / (2 * step);
    const CD fd2 = (plus.z2 - minus.z2) / (2 * step);
    killing_ok = killing_ok && std::abs(kv.v1 - fd1) < 1e-8 &&
                 std::abs(kv.v2 - fd2) < 1e-8;
  }
  note_if(action_ok, o.note, "group-action residual above 1e-8");
  note_if(metric_ok, o.note, "metric-invariance residual above 1e-8");
  note_if(killing_ok, o.note, "killing vector vs finite differences above 1e-8");

  bool scans_ok = true;
  for (const CatalogEntry& e : catalog()) {
    const double m = orthogonality_scan(e, default_section_grid(e.s.dim()));
    scans_ok = scans_ok && m < 1e-8;
  }
  note_if(scans_ok, o.note, "an orthogonality scan exceeded 1e-8");

  bool curv_ok = true;
  for (int i = 0; i < 20; ++i) {
    const BallPoint p = random_point(rng);
    CTangent v = random_tangent(rng);
    const double n = std::sqrt(std::norm(v.v1) + std::norm(v.v2));
    v.v1 /= n;
    v.v2 /= n;
    curv_ok = curv_ok && std::abs(holomorphic_curvature(p, v) + 1.0) < 1e-3;
  }
  note_if(curv_ok, o.note, "holomorphic curvature off -1 by more than 1e-3");

  const CatalogEntry* ia = nullptr;
  const CatalogEntry* id1 = nullptr;
  const CatalogEntry* id2 = nullptr;
  for (const CatalogEntry& e : catalog()) {
    if (e.id == "i.a") ia = &e;
    if (e.id == "i.d1") id1 = &e;
    if (e.id == "i.d2") id2 = &e;
  }
  const BallPoint p0{{0.3, 0.0}, {0.1, -0.2}};

  const OrbitCloud sphere =
      orbit_cloud(*ia, p0, uniform_grid(-0.7, 0.7, 3, ia->h.dim()));
  double lo = 1e300, hi = -1e300;
  for (const OrbitRow& row : sphere.rows) {
    const double d = distance(BallPoint{}, row.p);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  note_if(!sphere.rows.empty() && hi - lo < 1e-6, o.note,
          "distance-sphere orbit not constant within 1e-6");

  for (const CatalogEntry* e : {id1, id2}) {
    const OrbitCloud cloud =
        orbit_cloud(*e, p0, uniform_grid(-0.7, 0.7, 3, e->h.dim()));
    double hlo = 1e300, hhi = -1e300;
    for (const OrbitRow& row : cloud.rows) {
      const double h = horo_height(row.p);
      hlo = std::min(hlo, h);
      hhi = std::max(hhi, h);
    }
    note_if(!cloud.rows.empty() && (hhi - hlo) <= 1e-6 * std::max(1.0, hhi),
            o.note, e->id + " horosphere level not constant within 1e-6");
  }

  o.seconds = t.seconds();
  o.pass = o.note.empty();
  return o;
}

// ---- criterion 7: report determinism through the real binary ----------

int run_to_file(const std::string& cli, const std::string& path) {
  const std::string cmd =
      "\"" + cli + "\" verify-all --json > \"" + path + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  if (status == -1 || !WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const std::string& cli) {
  Outcome o{"determinism", false, 0, 0, ""};
  const Timer t;
  const fs::path dir = fs::temp_directory_path() / "polarch2_acceptance";
  fs::create_directories(dir);
  const std::string r1 = (dir / "r1.json").string();
  const std::string r2 = (dir / "r2.json").string();
  const int e1 = run_to_file(cli, r1);
  const int e2 = run_to_file(cli, r2);
  note_if(e1 == 0, o.note, "first run exited " + std::to_string(e1));
  note_if(e2 == 0, o.note, "second run exited " + std::to_string(e2));
  const std::string b1 = slurp(r1), b2 = slurp(r2);
  note_if(!b1.empty(), o.note, "first report empty");
  note_if(b1 == b2, o.note, "reports differ between runs");
  fs::remove_all(dir);
  o.seconds = t.seconds();
  o.pass = o.note.empty();
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: acceptance <path-to-cli>\n");
    return 2;
  }

  std::vector<Outcome> results;
  results.push_back(structure_suite());
  results.push_back(trace_form_oracle());
  results.push_back(criterion_suite());
  results.push_back(negative_suite());
  results.push_back(lemma_suite());
  results.push_back(numerical_suite());
  results.push_back(determinism(argv[1]));

  int passed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    Outcome& o = results[i];
    if (o.budget > 0 && o.seconds >= o.budget) {
      o.pass = false;
      char over[96];
      std::snprintf(over, sizeof(over), "runtime %.2fs over the %.0fs budget",
                    o.seconds, o.budget);
      note_if(false, o.note, over);
    }
    char budget_txt[32] = "";
    if (o.budget > 0)
      std::snprintf(budget_txt, sizeof(budget_txt), " / budget %.0fs",
                    o.budget);
    std::printf("criterion %zu (%s): %s (%.2fs%s)%s%s\n", i + 1,
                o.name.c_str(), o.pass ? "PASS" : "FAIL", o.seconds,
                budget_txt, o.note.empty() ? "" : " -- ", o.note.c_str());
    if (o.pass) ++passed;
  }
  std::printf("acceptance: %d/%zu criteria passed\n", passed, results.size());
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

// Command-line front end: verification suites, ad-hoc polarity checks, basis
// inspection, and orbit export.  Exit codes: 0 all checks passed, 1 a
// verification check failed, 2 malformed configuration or input.

#include "polarch2/report.hpp"

#include "CLI11.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

namespace p2 = polarch2;
namespace fs = std::filesystem;

namespace {

// POLAR_CH2_SEED takes precedence over both the default and --seed, so a
// pinned environment reproduces a run exactly regardless of stray flags.
std::uint64_t resolve_seed(std::uint64_t configured) {
  const char* env = std::getenv("POLAR_CH2_SEED");
  if (env == nullptr || *env == '\0') return configured;
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || end == env || *end != '\0')
    throw p2::ConfigError(
        std::string("POLAR_CH2_SEED: expected an unsigned integer, got \"") +
        env + "\"");
  return v;
}

void apply_jobs(int jobs) {
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#else
  (void)jobs;
#endif
}

std::string fmt_q(const p2::QSqrt3& q) {
  if (q.is_rational()) {
    std::string s = p2::rational_to_string(q.a);
    if (s.ends_with("/1")) s.resize(s.size() - 2);
    return s;
  }
  return q.to_string();
}

std::string fmt_scalar(const p2::ExactScalar& v) {
  if (v.is_zero()) return "0";
  const std::string re = v.re.is_zero() ? "" : fmt_q(v.re);
  std::string im;
  if (!v.im.is_zero()) {
    const std::string p = fmt_q(v.im);
    im = p == "1" ? "i" : (p == "-1" ? "-i" : p + "*i");
  }
  if (re.empty()) return im;
  if (im.empty()) return re;
  return im[0] == '-' ? re + " - " + im.substr(1) : re + " + " + im;
}

p2::GridSpec parse_grid(const std::string& text) {
  p2::GridSpec grid;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string part = text.substr(pos, comma - pos);
    const std::size_t c1 = part.find(':');
    const std::size_t c2 = part.find(':', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw p2::ConfigError("--grid: expected lo:hi:n, got \"" + part + "\"");
    p2::GridAxis axis;
    try {
      std::size_t used = 0;
      axis.lo = std::stod(part.substr(0, c1), &used);
      if (used != c1) throw std::invalid_argument("trailing characters");
      axis.hi = std::stod(part.substr(c1 + 1, c2 - c1 - 1), &used);
      if (used != c2 - c1 - 1) throw std::invalid_argument("trailing characters");
      const std::string tail = part.substr(c2 + 1);
      axis.n = std::stoi(tail, &used);
      if (used != tail.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw p2::ConfigError("--grid: cannot parse axis \"" + part + "\"");
    }
    if (axis.n < 0) throw p2::ConfigError("--grid: negative sample count");
    grid.axes.push_back(axis);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  return grid;
}

p2::BallPoint parse_point(const std::string& text) {
  double v[4];
  std::size_t pos = 0;
  for (int i = 0; i < 4; ++i) {
    const std::size_t comma =
        i == 3 ? text.size() : std::min(text.find(',', pos), text.size());
    const std::string part = text.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      v[i] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw p2::ConfigError("--p0: expected x1,y1,x2,y2, got \"" + text + "\"");
    }
    if (i < 3 && comma >= text.size())
      throw p2::ConfigError("--p0: expected four components, got \"" + text + "\"");
    pos = comma + 1;
  }
  return p2::BallPoint{{v[0], v[1]}, {v[2], v[3]}};
}

const p2::CatalogEntry& find_entry(const std::string& id) {
  for (const p2::CatalogEntry& e : p2::catalog())
    if (e.id == id) return e;
  std::string ids;
  for (const p2::CatalogEntry& e : p2::catalog())
    ids += (ids.empty() ? "" : ", ") + e.id;
  throw p2::ConfigError("--entry: unknown id \"" + id + "\" (valid: " + ids + ")");
}

void print_check_text(const p2::Json& r) {
  std::cout << "h:       " << r["h"].get<std::string>() << " (dim "
            << r["h_dim"].get<int>() << ")\n";
  std::cout << "section: " << r["section"].get<std::string>() << " (dim "
            << r["section_dim"].get<int>() << ")\n";
  std::cout << "orbit dim " << r["orbit_dim"].get<int>() << ", isotropy dim "
            << r["isotropy_dim"].get<int>() << ", normal dim "
            << r["normal_dim"].get<int>() << ", cohomogeneity "
            << r["cohomogeneity"].get<int>() << "\n";
  const auto flag = [&r](const char* key) {
    return r[key].get<bool>() ? "yes" : "no";
  };
  std::cout << "section in normal space: " << flag("section_in_normal")
            << "; slice dimension: " << flag("slice_dimension_ok")
            << "; transversal: " << flag("slice_transversal") << "\n";
  std::cout << "totally real: " << flag("section_totally_real")
            << "; complex: " << flag("section_complex")
            << "; brackets orthogonal: " << flag("brackets_orthogonal")
            << "\n";
  if (r.contains("witnesses"))
    for (const p2::Json& w : r["witnesses"])
      std::cout << "witness: " << w["detail"].get<std::string>() << "\n";
  if (r.contains("reason"))
    std::cout << "reason: " << r["reason"].get<std::string>() << "\n";
  std::cout << "verdict: "
            << (r["verdict"].get<bool>() ? "polar with the given section"
                                         : "not polar with the given section")
            << "\n";
}

void print_lemma_text(const p2::Json& r) {
  std::cout << "closure sweep: " << r["samples_per_branch"].get<int>()
            << " samples per branch, seed " << r["seed"].get<std::uint64_t>()
            << "\n";
  for (const auto& [name, b] : r["branches"].items()) {
    std::cout << "  " << name << ": " << b["accepted"].get<int>()
              << " accepted, " << b["rejected"].get<int>() << " rejected, "
              << b["failures"].get<int>() << " failures\n";
    if (b.contains("first_failure"))
      std::cout << "    first failure: "
                << b["first_failure"].get<std::string>() << "\n";
  }
  const p2::Json& imp = r["impossibility"];
  std::cout << "  impossibility checks: " << (imp["ok"].get<bool>() ? "ok" : "FAIL")
            << " (residual at U1 = " << imp["residual_u1"].get<std::string>()
            << ")\n";
  std::cout << "result: " << (r["ok"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

int run_basis(bool as_json) {
  const auto& ctx = p2::StructureContext::get();
  static const char* names[8] = {"theta(Z)", "theta(U1)", "theta(U2)", "T",
                                 "B",        "U1",        "U2",        "Z"};
  if (as_json) {
    p2::Json basis = p2::Json::array();
    for (int i = 0; i < 8; ++i) {
      p2::Json mat = p2::Json::array();
      for (int r = 0; r < 3; ++r) {
        p2::Json row = p2::Json::array();
        for (int c = 0; c < 3; ++c) {
          const p2::ExactScalar& v = ctx.basis()[i].mat()(r, c);
          row.push_back(p2::Json::array({fmt_q(v.re), fmt_q(v.im)}));
        }
        mat.push_back(row);
      }
      basis.push_back(p2::Json{{"name", names[i]}, {"matrix", mat}});
    }
    p2::Json table = p2::Json::array();
    for (int i = 0; i < 8; ++i) {
      p2::Json row = p2::Json::array();
      for (int j = 0; j < 8; ++j)
        row.push_back(p2::describe_canonical(
            bracket(ctx.basis()[i], ctx.basis()[j])));
      table.push_back(row);
    }
    const p2::Json doc{{"basis", basis}, {"bracket_table", table}};
    std::cout << doc.dump(2) << "\n";
    return 0;
  }

  for (int i = 0; i < 8; ++i) {
    std::cout << names[i] << " =\n";
    for (int r = 0; r < 3; ++r) {
      std::cout << "  [";
      for (int c = 0; c < 3; ++c) {
        std::cout << (c ? ", " : " ") << fmt_scalar(ctx.basis()[i].mat()(r, c));
      }
      std::cout << " ]\n";
    }
  }

  std::string cells[8][8];
  std::size_t width = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      cells[i][j] =
          p2::describe_canonical(bracket(ctx.basis()[i], ctx.basis()[j]));
      width = std::max(width, cells[i][j].size());
    }
  for (int i = 0; i < 8; ++i) width = std::max(width, std::string(names[i]).size());
  width += 2;
  const auto pad = [width](const std::string& s) {
    return s + std::string(width - s.size(), ' ');
  };
  std::cout << "\nbracket table [row, column]:\n" << pad("");
  for (int j = 0; j < 8; ++j) std::cout << pad(names[j]);
  std::cout << "\n";
  for (int i = 0; i < 8; ++i) {
    std::cout << pad(names[i]);
    for (int j = 0; j < 8; ++j) std::cout << pad(cells[i][j]);
    std::cout << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "polarch2: exact verification of the polar actions on the complex "
      "hyperbolic plane, with numerical cross-checks in the ball model"};
  app.require_subcommand(1);

  // verify-all
  CLI::App* verify = app.add_subcommand(
      "verify-all", "run every suite and emit one combined report");
  p2::VerifyConfig vcfg;
  int jobs = 0;
  bool v_json = false, v_markdown = false;
  verify->add_option("--samples", vcfg.samples,
                     "closure-sweep samples per branch")
      ->check(CLI::PositiveNumber);
  verify->add_option("--seed", vcfg.seed, "seed for every randomized piece");
  verify->add_flag("--inject-fault", vcfg.inject_fault,
                   "swap a deliberately wrong section into the catalog "
                   "(self-test; the run must fail)");
  CLI::Option* vj = verify->add_flag("--json", v_json, "emit the JSON report");
  verify->add_flag("--markdown", v_markdown, "emit a markdown report")
      ->excludes(vj);
  verify->add_option("--jobs", jobs,
                     "worker threads for the sweeps (never recorded in the "
                     "report)");

  // check
  CLI::App* check = app.add_subcommand(
      "check", "decide polarity for a subalgebra and a candidate section");
  std::string h_path, s_path;
  bool c_json = false;
  check->add_option("h_file", h_path,
                    "JSON file with the acting subalgebra (coordinates over "
                    "the canonical basis, or raw matrices)")
      ->required();
  check->add_option("s_file", s_path, "JSON file with the candidate section")
      ->required();
  check->add_flag("--json", c_json, "emit the JSON report");

  // lemma-suite
  CLI::App* lemma = app.add_subcommand(
      "lemma-suite", "randomized closure and conjugation sweep");
  int l_samples = 128;
  std::uint64_t l_seed = p2::VerifyConfig{}.seed;
  bool l_json = false;
  lemma->add_option("--samples", l_samples, "samples per branch")
      ->check(CLI::PositiveNumber);
  lemma->add_option("--seed", l_seed, "seed for the sweep");
  lemma->add_flag("--json", l_json, "emit the JSON report");
  lemma->add_option("--jobs", jobs, "worker threads for the sweep");

  // orbits
  CLI::App* orbits = app.add_subcommand(
      "orbits", "sample an orbit of a catalog action and export CSV and JSON");
  std::string o_entry, o_out, o_grid, o_p0 = "0.3,0,0.1,-0.2";
  orbits->add_option("--entry", o_entry, "catalog id, e.g. ii.c")->required();
  orbits->add_option("--out", o_out, "output directory")->required();
  orbits->add_option("--grid", o_grid,
                     "parameter grid lo:hi:n[,lo:hi:n...], one axis per "
                     "generator (default -0.8:0.8:5 on every axis)");
  orbits->add_option("--p0", o_p0, "base point x1,y1,x2,y2 in the unit ball");

  // basis
  CLI::App* basis = app.add_subcommand(
      "basis", "print the canonical basis matrices and the bracket table");
  bool b_json = false;
  basis->add_flag("--json", b_json, "emit JSON");

  try {
    app.parse(argc, argv);

    if (app.got_subcommand(verify)) {
      apply_jobs(jobs);
      vcfg.seed = resolve_seed(vcfg.seed);
      const p2::Json rep = p2::build_verify_report(vcfg);
      if (v_json)
        std::cout << rep.dump(2) << "\n";
      else if (v_markdown)
        std::cout << p2::render_markdown(rep);
      else
        std::cout << p2::render_text(rep);
      return p2::report_ok(rep) ? 0 : 1;
    }

    if (app.got_subcommand(check)) {
      const p2::Subspace h = p2::load_subspace_file(h_path);
      const p2::Subspace s = p2::load_subspace_file(s_path);
      const p2::SubalgebraCheck closure = p2::is_subalgebra(h);
      if (!closure.closed) {
        const auto hb = h.lie_basis();
        throw p2::ConfigError(
            h_path + ": bracket closure violated: [" +
            p2::describe_canonical(hb[closure.i]) + ", " +
            p2::describe_canonical(hb[closure.j]) + "] = " +
            p2::describe_canonical(closure.witness) + " is outside the span");
      }
      const p2::Json rep = p2::check_report(h, s);
      if (c_json)
        std::cout << rep.dump(2) << "\n";
      else
        print_check_text(rep);
      return rep["verdict"].get<bool>() ? 0 : 1;
    }

    if (app.got_subcommand(lemma)) {
      apply_jobs(jobs);
      const p2::Json rep = p2::lemma_report(l_samples, resolve_seed(l_seed));
      if (l_json)
        std::cout << rep.dump(2) << "\n";
      else
        print_lemma_text(rep);
      return rep["ok"].get<bool>() ? 0 : 1;
    }

    if (app.got_subcommand(orbits)) {
      const p2::CatalogEntry& e = find_entry(o_entry);
      const p2::BallPoint p0 = parse_point(o_p0);
      if (!p2::in_ball(p0))
        throw p2::ConfigError("--p0: the base point must lie in the open unit ball");
      p2::GridSpec grid = o_grid.empty()
                              ? p2::uniform_grid(-0.8, 0.8, 5, e.h.dim())
                              : parse_grid(o_grid);
      if (static_cast<int>(grid.axes.size()) != e.h.dim())
        throw p2::ConfigError(
            "--grid: entry " + e.id + " has " + std::to_string(e.h.dim()) +
            " generators but the grid has " + std::to_string(grid.axes.size()) +
            " axes");
      const p2::OrbitCloud cloud = p2::orbit_cloud(e, p0, grid);
      std::error_code ec;
      fs::create_directories(o_out, ec);
      if (ec)
        throw p2::ConfigError("--out: cannot create directory " + o_out + ": " +
                              ec.message());
      const std::string csv = (fs::path(o_out) / (e.id + ".csv")).string();
      const std::string json = (fs::path(o_out) / (e.id + ".json")).string();
      p2::write_orbit_csv(cloud, csv);
      p2::write_orbit_json(cloud, grid, resolve_seed(p2::VerifyConfig{}.seed),
                           json);
      std::cout << "wrote " << cloud.rows.size() << " points to " << csv
                << " and " << json << "\n";
      return 0;
    }

    return run_basis(b_json);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const p2::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

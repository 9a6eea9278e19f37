#include "doctest.h"

#include "polarch2/ball.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

using namespace polarch2;

namespace {

const StructureContext& ctx() { return StructureContext::get(); }

// Deterministic [0,1) doubles straight from the engine words.
struct Rand {
  std::mt19937_64 eng;
  explicit Rand(std::uint64_t seed) : eng(seed) {}
  double unit() { return (eng() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }
};

FMat3 random_group(Rand& rng) {
  const auto& basis = std_basis();
  FMat3 x{};
  for (int i = 0; i < 8; ++i)
    x = x + rng.range(-0.55, 0.55) * to_float(basis[i]);
  FMat3 g = expm(x);
  REQUIRE(su_form_residual(g) < 1e-11);
  return g;
}

BallPoint random_point(Rand& rng) {
  return {CD(rng.range(-0.35, 0.35), rng.range(-0.35, 0.35)),
          CD(rng.range(-0.35, 0.35), rng.range(-0.35, 0.35))};
}

CTangent random_tangent(Rand& rng) {
  return {CD(rng.range(-1, 1), rng.range(-1, 1)),
          CD(rng.range(-1, 1), rng.range(-1, 1))};
}

double dist2(const BallPoint& a, const BallPoint& b) {
  return std::norm(a.z1 - b.z1) + std::norm(a.z2 - b.z2);
}

const CatalogEntry& entry(const std::string& id) {
  for (const CatalogEntry& e : catalog())
    if (e.id == id) return e;
  throw std::logic_error("unknown entry " + id);
}

}  // namespace

TEST_CASE("float exponential against closed forms") {
  FMat3 zero{};
  FMat3 e = expm(zero);
  CHECK(max_abs(e + (-1.0) * FMat3::identity()) < 1e-15);

  // exp(tB) is the standard boost cosh/sinh block.
  for (double t : {0.3, 1.0, 2.7, -1.9}) {
    FMat3 g = expm(t * to_float(ctx().B()));
    CHECK(std::abs(g(0, 0) - std::cosh(t / 2)) < 1e-13);
    CHECK(std::abs(g(0, 1) - std::sinh(t / 2)) < 1e-13);
    CHECK(std::abs(g(1, 0) - std::sinh(t / 2)) < 1e-13);
    CHECK(std::abs(g(2, 2) - 1.0) < 1e-13);
  }

  Rand rng(11);
  for (int i = 0; i < 25; ++i) {
    FMat3 x{};
    const auto& basis = std_basis();
    for (int j = 0; j < 8; ++j)
      x = x + rng.range(-1.2, 1.2) * to_float(basis[j]);
    FMat3 lr = expm(x) * expm((-1.0) * x);
    CHECK(max_abs(lr + (-1.0) * FMat3::identity()) < 1e-10);
  }
}

TEST_CASE("fractional-linear action is a group action on the ball") {
  Rand rng(23);
  BallPoint p = random_point(rng);
  BallPoint q = act(FMat3::identity(), p);
  CHECK(dist2(p, q) == 0.0);

  for (int i = 0; i < 30; ++i) {
    FMat3 g = random_group(rng);
    FMat3 h = random_group(rng);
    BallPoint x = random_point(rng);
    CHECK(in_ball(act(g, x)));
    // composition within 1e-10
    CHECK(dist2(act(g * h, x), act(g, act(h, x))) < 1e-20);
  }
  for (int i = 0; i < 20; ++i) {
    const auto& basis = std_basis();
    FMat3 x{};
    for (int j = 0; j < 8; ++j)
      x = x + rng.range(-0.55, 0.55) * to_float(basis[j]);
    BallPoint w = random_point(rng);
    BallPoint round = act(expm(x), act(expm((-1.0) * x), w));
    CHECK(dist2(round, w) < 1e-20);
  }

  // Non-group input is rejected.
  CHECK_THROWS_AS(act(2.0 * FMat3::identity(), p), std::invalid_argument);

  // The flat flow runs to the boundary along increasing radii.
  double last = -1.0;
  FMat3 bf = to_float(ctx().B());
  for (double t = 0.5; t <= 6.01; t += 0.5) {
    BallPoint z = act(expm(t * bf), BallPoint{});
    double r = std::sqrt(std::norm(z.z1) + std::norm(z.z2));
    CHECK(r > last);
    CHECK(r < 1.0);
    last = r;
  }
  CHECK(last > 0.99);
}

TEST_CASE("metric calibration, invariance, and curvature") {
  CHECK(std::abs(calibration_constant() - 4.0) < 1e-12);

  MetricSample at0 = metric(BallPoint{});
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(std::abs(at0.gram[a][b] - (a == b ? 4.0 : 0.0)) < 1e-12);

  Rand rng(37);
  for (int i = 0; i < 100; ++i) {
    FMat3 g = random_group(rng);
    BallPoint p = random_point(rng);
    CTangent v = random_tangent(rng);
    CTangent w = random_tangent(rng);
    double before = metric_inner(p, v, w);
    BallPoint gp = act(g, p);
    double after = metric_inner(gp, dact(g, p, v), dact(g, p, w));
    CHECK(std::abs(after - before) < 1e-8 * (1.0 + std::abs(before)));
  }

  // Symmetry and positivity of the gram samples.
  for (int i = 0; i < 10; ++i) {
    BallPoint p = random_point(rng);
    MetricSample ms = metric(p);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        CHECK(std::abs(ms.gram[a][b] - ms.gram[b][a]) < 1e-12);
    CTangent v = random_tangent(rng);
    CHECK(metric_inner(p, v, v) > 0.0);
  }

  for (int i = 0; i < 25; ++i) {
    BallPoint p = random_point(rng);
    CTangent v = random_tangent(rng);
    CHECK(std::abs(holomorphic_curvature(p, v) - (-1.0)) < 1e-3);
  }
}

TEST_CASE("killing vectors: isotropy, calibration, finite differences") {
  for (const LieElt& x : ctx().k().lie_basis()) {
    CTangent kv = killing_vector(x, BallPoint{});
    CHECK(std::abs(kv.v1) < 1e-12);
    CHECK(std::abs(kv.v2) < 1e-12);
  }
  CHECK(std::abs(metric_norm(BallPoint{}, killing_vector(ctx().B(), BallPoint{})) -
                 1.0) < 1e-12);

  Rand rng(51);
  const auto& basis = std_basis();
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    FMat3 x{};
    for (int j = 0; j < 8; ++j)
      x = x + rng.range(-1, 1) * to_float(basis[j]);
    BallPoint p = random_point(rng);
    CTangent an = killing_vector(x, p);
    BallPoint fw = act(expm(h * x), p);
    BallPoint bw = act(expm(-h * x), p);
    CTangent fd{(fw.z1 - bw.z1) / (2 * h), (fw.z2 - bw.z2) / (2 * h)};
    CHECK(std::abs(an.v1 - fd.v1) < 1e-8);
    CHECK(std::abs(an.v2 - fd.v2) < 1e-8);
  }
}

TEST_CASE("distance function: geodesic parametrization and invariance") {
  FMat3 bf = to_float(ctx().B());
  for (double t : {0.4, 1.0, 2.5, 4.0}) {
    BallPoint z = act(expm(t * bf), BallPoint{});
    CHECK(std::abs(z.z1.real() - std::tanh(t / 2)) < 1e-12);
    CHECK(std::abs(z.z1.imag()) < 1e-12);
    CHECK(std::abs(z.z2) < 1e-12);
    CHECK(std::abs(distance(BallPoint{}, z) - t) < 1e-10);
  }

  Rand rng(67);
  for (int i = 0; i < 20; ++i) {
    FMat3 g = random_group(rng);
    BallPoint p = random_point(rng), q = random_point(rng);
    CHECK(std::abs(distance(p, q) - distance(q, p)) < 1e-12);
    CHECK(std::abs(distance(act(g, p), act(g, q)) - distance(p, q)) < 1e-8);
  }
}

TEST_CASE("section frames land on the section tangent") {
  for (const CatalogEntry& e : catalog()) {
    SectionFrame f = section_frame(e.s);
    CHECK(f.dim == static_cast<int>(e.s.dim()));
    CHECK_FALSE(f.complex_line);  // every catalog section is totally real

    BallPoint o = act(f.g, BallPoint{});
    CHECK(std::abs(o.z1) < 1e-14);
    CHECK(std::abs(o.z2) < 1e-14);

    std::vector<double> zero(f.dim, 0.0);
    std::vector<CTangent> tans = slice_tangents(f, zero);
    // Each exact section direction must lie in the span of the frame
    // tangents (and conversely the dimensions agree), orthogonally in the
    // calibrated metric at the origin.
    for (const LieElt& x : e.s.lie_basis()) {
      CTangent kv = killing_vector(x, BallPoint{});
      double n2 = metric_inner(BallPoint{}, kv, kv);
      double residual = n2;
      for (const CTangent& t : tans) {
        double c = metric_inner(BallPoint{}, kv, t) /
                   metric_inner(BallPoint{}, t, t);
        residual -= c * c * metric_inner(BallPoint{}, t, t);
      }
      CHECK(std::abs(residual) < 1e-9 * n2);
    }
    // Frame tangents are orthonormal at the origin.
    for (size_t a = 0; a < tans.size(); ++a)
      for (size_t b = 0; b < tans.size(); ++b)
        CHECK(std::abs(metric_inner(BallPoint{}, tans[a], tans[b]) -
                       (a == b ? 1.0 : 0.0)) < 1e-10);
  }

  // A complex line through the origin: span{B, JB}.
  const auto& c = ctx();
  const QSqrt3 half{Rational(1) / 2};
  Subspace cl = Subspace::span_elts(
      {c.B(), half * (c.Z() - cartan_theta(c.Z()))});
  SectionFrame f = section_frame(cl);
  CHECK(f.complex_line);
  for (long i = 0; i < 9; ++i) {
    BallPoint p = slice_point(f, uniform_grid(-1.0, 1.0, 3, 2).at(i));
    CHECK(in_ball(p));
    CHECK(std::abs(p.z2) < 1e-13);  // frame is the identity on this section
  }

  // Rejections: not in p, wrong dimension, neither real nor complex.
  CHECK_THROWS_AS(section_frame(c.k0()), std::invalid_argument);
  CHECK_THROWS_AS(section_frame(c.p()), std::invalid_argument);
  Subspace skew = Subspace::span_elts(
      {c.B() + c.U1() - cartan_theta(c.U1()),
       half * (c.Z() - cartan_theta(c.Z()))});
  REQUIRE_FALSE(is_real(skew, c.j_std(), c.gram_std()));
  REQUIRE_FALSE(is_complex(skew, c.j_std()));
  CHECK_THROWS_AS(section_frame(skew), std::invalid_argument);
}

TEST_CASE("sections meet every catalog orbit orthogonally") {
  for (const CatalogEntry& e : catalog()) {
    GridSpec grid = default_section_grid(static_cast<int>(e.s.dim()));
    double worst = orthogonality_scan(e, grid);
    INFO("entry ", e.id, " max |cos| = ", worst);
    CHECK(worst < 1e-8);
  }

  // Parallel and serial scans agree to the bit.
  const CatalogEntry& iib = entry("ii.b");
  GridSpec g2 = default_section_grid(2);
  CHECK(orthogonality_scan(iib, g2) == orthogonality_scan_serial(iib, g2));

  const NegativeEntry& bad = negative_catalog().front();
  CatalogEntry not_polar{bad.id, bad.description, bad.h, bad.s, 1};
  CHECK_THROWS_AS(orthogonality_scan(not_polar, g2), std::invalid_argument);
}

TEST_CASE("orbit clouds: spheres, horospheres, exports") {
  // (i.a) the full stabilizer sweeps distance spheres around the origin.
  const CatalogEntry& ia = entry("i.a");
  BallPoint p0{CD(0.3, 0.0), CD(0.1, -0.2)};
  OrbitCloud sphere = orbit_cloud(ia, p0, uniform_grid(-1.5, 1.5, 4, 4));
  REQUIRE(sphere.rows.size() == 256);
  double d0 = distance(BallPoint{}, p0);
  for (const OrbitRow& row : sphere.rows)
    CHECK(std::abs(distance(BallPoint{}, row.p) - d0) < 1e-8);

  // (i.d) the nilpotent part sweeps a horosphere level set.
  const CatalogEntry& id2 = entry("i.d2");
  OrbitCloud horo = orbit_cloud(id2, p0, uniform_grid(-1.0, 1.0, 5, 3));
  REQUIRE(horo.rows.size() == 125);
  double h0 = horo_height(p0);
  for (const OrbitRow& row : horo.rows)
    CHECK(std::abs(horo_height(row.p) - h0) < 1e-6 * (1.0 + h0));
  OrbitCloud horo4 = orbit_cloud(entry("i.d1"), p0, uniform_grid(-0.8, 0.8, 3, 4));
  for (const OrbitRow& row : horo4.rows)
    CHECK(std::abs(horo_height(row.p) - h0) < 1e-6 * (1.0 + h0));

  // Parallel kernel matches the serial reference exactly.
  OrbitCloud ser = orbit_cloud_serial(id2, p0, uniform_grid(-1.0, 1.0, 5, 3));
  REQUIRE(ser.rows.size() == horo.rows.size());
  for (size_t i = 0; i < ser.rows.size(); ++i) {
    CHECK(ser.rows[i].t == horo.rows[i].t);
    CHECK(dist2(ser.rows[i].p, horo.rows[i].p) == 0.0);
  }

  CHECK(orbit_cloud(ia, p0, GridSpec{}).rows.empty());
  CHECK(orbit_cloud(ia, p0, uniform_grid(-1, 1, 0, 4)).rows.empty());
  CHECK_THROWS_AS(orbit_cloud(ia, p0, uniform_grid(-1, 1, 3, 2)),
                  std::invalid_argument);

  // Exports: header shape, row count, and byte-for-byte determinism.
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "polarch2_ball_test";
  fs::create_directories(dir);
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  fs::path csv = dir / "cloud.csv", json = dir / "cloud.json";
  write_orbit_csv(horo, csv.string());
  write_orbit_json(horo, uniform_grid(-1.0, 1.0, 5, 3), 42, json.string());
  std::string csv1 = slurp(csv), json1 = slurp(json);
  write_orbit_csv(horo, csv.string());
  write_orbit_json(horo, uniform_grid(-1.0, 1.0, 5, 3), 42, json.string());
  CHECK(csv1 == slurp(csv));
  CHECK(json1 == slurp(json));
  CHECK(csv1.substr(0, csv1.find('\n')) == "entry_id,t1,t2,t3,x1,y1,x2,y2");
  CHECK(std::count(csv1.begin(), csv1.end(), '\n') == 126);  // header + rows

  auto doc = nlohmann::json::parse(json1);
  CHECK(doc["metadata"]["entry"] == "i.d2");
  CHECK(doc["metadata"]["seed"] == 42);
  CHECK(doc["metadata"]["count"] == 125);
  CHECK(doc["points"].size() == 125);

  CHECK_THROWS_AS(write_orbit_csv(horo, (dir / "no_dir" / "x.csv").string()),
                  std::runtime_error);
}

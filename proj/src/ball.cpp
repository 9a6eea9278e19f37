#include "polarch2/ball.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace polarch2 {

namespace {

constexpr double kFormTol = 1e-10;

const StructureContext& ctx() { return StructureContext::get(); }

CD ctangent_dot(const CTangent& v, const CTangent& w) {
  return v.v1 * std::conj(w.v1) + v.v2 * std::conj(w.v2);
}

CTangent scale(CD s, const CTangent& v) { return {s * v.v1, s * v.v2}; }

}  // namespace

FMat3 FMat3::identity() {
  FMat3 r;
  for (int i = 0; i < 3; ++i) r(i, i) = 1.0;
  return r;
}

FMat3 operator+(const FMat3& a, const FMat3& b) {
  FMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

FMat3 operator*(const FMat3& a, const FMat3& b) {
  FMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CD s = 0.0;
      for (int k = 0; k < 3; ++k) s += a(i, k) * b(k, j);
      r(i, j) = s;
    }
  return r;
}

FMat3 operator*(double s, const FMat3& a) {
  FMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = s * a(i, j);
  return r;
}

FMat3 to_float(const Mat3& m) {
  FMat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m(i, j).to_complex();
  return r;
}

FMat3 to_float(const LieElt& x) { return to_float(x.mat()); }
FMat3 to_float(const GroupElt& g) { return to_float(g.mat()); }

double max_abs(const FMat3& a) {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(a(i, j)));
  return m;
}

double su_form_residual(const FMat3& g) {
  // g^* Ip g - Ip with Ip = diag(-1,1,1).
  double worst = 0.0;
  const double eps[3] = {-1.0, 1.0, 1.0};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CD s = 0.0;
      for (int k = 0; k < 3; ++k) s += std::conj(g(k, i)) * eps[k] * g(k, j);
      if (i == j) s -= eps[i];
      worst = std::max(worst, std::abs(s));
    }
  return worst;
}

FMat3 expm(const FMat3& a) {
  double norm = max_abs(a);
  int squarings = 0;
  double scale = 1.0;
  while (norm * scale > 0.25 && squarings < 40) {
    scale *= 0.5;
    ++squarings;
  }
  FMat3 b = scale * a;
  FMat3 term = FMat3::identity();
  FMat3 sum = term;
  for (int k = 1; k <= 18; ++k) {
    term = (1.0 / k) * (term * b);
    sum = sum + term;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

bool in_ball(const BallPoint& p) {
  return std::norm(p.z1) + std::norm(p.z2) < 1.0;
}

BallPoint act(const FMat3& g, const BallPoint& p) {
  if (su_form_residual(g) >= kFormTol)
    throw std::invalid_argument("matrix is not close enough to SU(1,2)");
  CD w0 = g(0, 0) + g(0, 1) * p.z1 + g(0, 2) * p.z2;
  CD w1 = g(1, 0) + g(1, 1) * p.z1 + g(1, 2) * p.z2;
  CD w2 = g(2, 0) + g(2, 1) * p.z1 + g(2, 2) * p.z2;
  // |w0| >= |(w1,w2)| for form-preserving g and interior points.
  if (std::abs(w0) < 1e-8)
    throw std::logic_error("renormalization coordinate vanished");
  return {w1 / w0, w2 / w0};
}

CTangent dact(const FMat3& g, const BallPoint& p, const CTangent& v) {
  CD w0 = g(0, 0) + g(0, 1) * p.z1 + g(0, 2) * p.z2;
  CD w1 = g(1, 0) + g(1, 1) * p.z1 + g(1, 2) * p.z2;
  CD w2 = g(2, 0) + g(2, 1) * p.z1 + g(2, 2) * p.z2;
  CD d0 = g(0, 1) * v.v1 + g(0, 2) * v.v2;
  CD d1 = g(1, 1) * v.v1 + g(1, 2) * v.v2;
  CD d2 = g(2, 1) * v.v1 + g(2, 2) * v.v2;
  return {(d1 - (w1 / w0) * d0) / w0, (d2 - (w2 / w0) * d0) / w0};
}

CTangent killing_vector(const FMat3& xf, const BallPoint& p) {
  // d/dt of (g w)_{1,2} / (g w)_0 at g = exp(tX), t = 0, w = (1, z).
  CD w0 = xf(0, 0) + xf(0, 1) * p.z1 + xf(0, 2) * p.z2;
  CD w1 = xf(1, 0) + xf(1, 1) * p.z1 + xf(1, 2) * p.z2;
  CD w2 = xf(2, 0) + xf(2, 1) * p.z1 + xf(2, 2) * p.z2;
  return {w1 - p.z1 * w0, w2 - p.z2 * w0};
}

CTangent killing_vector(const LieElt& x, const BallPoint& p) {
  return killing_vector(to_float(x), p);
}

double calibration_constant() {
  static const double c = [] {
    CTangent kv = killing_vector(ctx().B(), BallPoint{});
    double eucl2 = std::norm(kv.v1) + std::norm(kv.v2);
    return inner(ctx().B(), ctx().B()).to_double() / eucl2;
  }();
  return c;
}

namespace {

// Hermitian matrix H of the calibrated metric at z: inner products are
// Re(sum_ij H_ij v_i conj(w_j)).
std::array<std::array<CD, 2>, 2> hermitian_metric(const BallPoint& p) {
  const double c = calibration_constant();
  const double r2 = std::norm(p.z1) + std::norm(p.z2);
  const double den = (1.0 - r2) * (1.0 - r2);
  const CD z[2] = {p.z1, p.z2};
  std::array<std::array<CD, 2>, 2> h;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CD v = std::conj(z[i]) * z[j];
      if (i == j) v += 1.0 - r2;
      h[i][j] = c * v / den;
    }
  return h;
}

}  // namespace

double metric_inner(const BallPoint& p, const CTangent& v, const CTangent& w) {
  if (!in_ball(p)) throw std::invalid_argument("point is outside the unit ball");
  auto h = hermitian_metric(p);
  const CD vv[2] = {v.v1, v.v2};
  const CD ww[2] = {w.v1, w.v2};
  CD s = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) s += h[i][j] * vv[i] * std::conj(ww[j]);
  return s.real();
}

double metric_norm(const BallPoint& p, const CTangent& v) {
  return std::sqrt(std::max(0.0, metric_inner(p, v, v)));
}

MetricSample metric(const BallPoint& p) {
  MetricSample out;
  out.point = p;
  const CTangent basis[4] = {{1.0, 0.0}, {CD(0, 1), 0.0}, {0.0, 1.0}, {0.0, CD(0, 1)}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      out.gram[a][b] = metric_inner(p, basis[a], basis[b]);
  return out;
}

double distance(const BallPoint& a, const BallPoint& b) {
  if (!in_ball(a) || !in_ball(b))
    throw std::invalid_argument("point is outside the unit ball");
  CD herm = a.z1 * std::conj(b.z1) + a.z2 * std::conj(b.z2);
  double sigma = std::norm(1.0 - herm) /
                 ((1.0 - std::norm(a.z1) - std::norm(a.z2)) *
                  (1.0 - std::norm(b.z1) - std::norm(b.z2)));
  return 2.0 * std::acosh(std::sqrt(std::max(1.0, sigma)));
}

double horo_height(const BallPoint& p) {
  return std::norm(1.0 - p.z1) / (1.0 - std::norm(p.z1) - std::norm(p.z2));
}

double holomorphic_curvature(const BallPoint& p, const CTangent& v) {
  double vn = std::sqrt(std::norm(v.v1) + std::norm(v.v2));
  if (vn < 1e-14) throw std::invalid_argument("direction must be nonzero");
  CTangent u = scale(1.0 / vn, v);
  // Conformal factor of the complex geodesic zeta -> p + zeta u; its Gauss
  // curvature is the holomorphic sectional curvature of span(v, iv).
  auto lambda = [&](double x, double y) {
    CD zeta(x, y);
    BallPoint q{p.z1 + zeta * u.v1, p.z2 + zeta * u.v2};
    return metric_inner(q, u, u);
  };
  const double h = 1e-2;
  double l0 = std::log(lambda(0, 0));
  double lap = (std::log(lambda(h, 0)) + std::log(lambda(-h, 0)) +
                std::log(lambda(0, h)) + std::log(lambda(0, -h)) - 4.0 * l0) /
               (h * h);
  return -lap / (2.0 * lambda(0, 0));
}

long GridSpec::total() const {
  if (axes.empty()) return 0;
  long t = 1;
  for (const GridAxis& a : axes) t *= a.n;
  return t;
}

std::vector<double> GridSpec::at(long flat) const {
  std::vector<double> u(axes.size());
  for (int i = static_cast<int>(axes.size()) - 1; i >= 0; --i) {
    const GridAxis& a = axes[i];
    long k = flat % a.n;
    flat /= a.n;
    u[i] = a.n == 1 ? a.lo : a.lo + k * (a.hi - a.lo) / (a.n - 1);
  }
  return u;
}

GridSpec uniform_grid(double lo, double hi, int n, int dims) {
  GridSpec g;
  g.axes.assign(dims, GridAxis{lo, hi, n});
  return g;
}

SectionFrame section_frame(const Subspace& s) {
  const auto& c = ctx();
  if (s.dim() < 1 || s.dim() > 2 || !c.p().contains(s))
    throw std::invalid_argument("section must be a line or plane inside p");
  bool real = is_real(s, c.j_std(), c.gram_std());
  bool cplx = s.dim() == 2 && is_complex(s, c.j_std());
  if (!real && !cplx)
    throw std::invalid_argument("section must be totally real or complex");

  // Push the basis to the tangent space at the origin and orthonormalize in
  // the Hermitian metric (real sections give real Gram entries, so this is
  // simultaneously Riemannian orthonormalization).
  std::vector<CTangent> v;
  for (const LieElt& x : s.lie_basis()) v.push_back(killing_vector(x, BallPoint{}));

  CTangent w1 = scale(1.0 / std::sqrt(std::abs(ctangent_dot(v[0], v[0]).real())), v[0]);
  CTangent w2;
  if (cplx || v.size() < 2) {
    w2 = {-std::conj(w1.v2), std::conj(w1.v1)};  // Hermitian complement
  } else {
    CD proj = ctangent_dot(v[1], w1);
    CTangent r{v[1].v1 - proj * w1.v1, v[1].v2 - proj * w1.v2};
    w2 = scale(1.0 / std::sqrt(std::abs(ctangent_dot(r, r).real())), r);
  }

  // Block element diag(a, aW) with a^3 det W = 1 fixes the origin and acts
  // on its tangent space by W/|a| phases -- enough to carry the standard
  // slice onto the one tangent to s.
  CD detw = w1.v1 * w2.v2 - w1.v2 * w2.v1;
  CD a = std::pow(detw,CD(-1.0 / 3.0, 0.0));
  SectionFrame f;
  f.dim = static_cast<int>(s.dim());
  f.complex_line = cplx;
  f.g(0, 0) = a;
  f.g(1, 1) = a * w1.v1;
  f.g(2, 1) = a * w1.v2;
  f.g(1, 2) = a * w2.v1;
  f.g(2, 2) = a * w2.v2;
  if (su_form_residual(f.g) >= kFormTol)
    throw std::logic_error("section frame drifted off the group");
  return f;
}

namespace {

// Radial profile of the geodesic exponential at the origin: a tangent
// parameter u lands at Euclidean radius tanh(|u|/2).
double radial_factor(double r) {
  if (r < 1e-6) return 0.5 - r * r / 24.0;
  return std::tanh(r / 2.0) / r;
}

double radial_factor_deriv(double r) {
  if (r < 1e-6) return -r / 12.0;
  double s = 1.0 / std::cosh(r / 2.0);
  return (r / 2.0 * s * s - std::tanh(r / 2.0)) / (r * r);
}

BallPoint raw_slice_point(const SectionFrame& f, const std::vector<double>& u) {
  if (static_cast<int>(u.size()) != f.dim)
    throw std::invalid_argument("parameter count does not match section dimension");
  if (f.dim == 1) return {std::tanh(u[0] / 2.0), 0.0};
  double r = std::hypot(u[0], u[1]);
  double fac = radial_factor(r);
  if (f.complex_line) return {fac * CD(u[0], u[1]), 0.0};
  return {fac * u[0], fac * u[1]};
}

std::vector<CTangent> raw_slice_tangents(const SectionFrame& f,
                                         const std::vector<double>& u) {
  std::vector<CTangent> out;
  if (f.dim == 1) {
    double s = 1.0 / std::cosh(u[0] / 2.0);
    out.push_back({0.5 * s * s, 0.0});
    return out;
  }
  double r = std::hypot(u[0], u[1]);
  double fac = radial_factor(r);
  double dfac = radial_factor_deriv(r);
  for (int j = 0; j < 2; ++j) {
    double radial = r < 1e-12 ? 0.0 : dfac * u[j] / r;
    if (f.complex_line) {
      CD zeta(u[0], u[1]);
      CD dir = j == 0 ? CD(1, 0) : CD(0, 1);
      out.push_back({radial * zeta + fac * dir, 0.0});
    } else {
      CTangent t{radial * u[0], radial * u[1]};
      (j == 0 ? t.v1 : t.v2) += fac;
      out.push_back(t);
    }
  }
  return out;
}

}  // namespace

BallPoint slice_point(const SectionFrame& f, const std::vector<double>& u) {
  return act(f.g, raw_slice_point(f, u));
}

std::vector<CTangent> slice_tangents(const SectionFrame& f,
                                     const std::vector<double>& u) {
  BallPoint sp = raw_slice_point(f, u);
  std::vector<CTangent> out;
  for (const CTangent& t : raw_slice_tangents(f, u))
    out.push_back(dact(f.g, sp, t));
  return out;
}

std::vector<BallPoint> section_points(const CatalogEntry& e, const GridSpec& grid) {
  SectionFrame f = section_frame(e.s);
  std::vector<BallPoint> out;
  for (long i = 0; i < grid.total(); ++i) out.push_back(slice_point(f, grid.at(i)));
  return out;
}

GridSpec default_section_grid(int dim) {
  return dim == 1 ? uniform_grid(-1.2, 1.2, 20, 1) : uniform_grid(-1.2, 1.2, 15, 2);
}

namespace {

double scan_impl(const CatalogEntry& e, const GridSpec& grid, bool parallel) {
  PolarityReport rep = is_polar_with_section(e.h, e.s);
  if (!rep.verdict)
    throw std::invalid_argument("orthogonality scan requires an exactly verified pair");
  SectionFrame f = section_frame(e.s);
  std::vector<FMat3> gens;
  for (const LieElt& x : e.h.lie_basis()) gens.push_back(to_float(x));

  const long n = grid.total();
  std::vector<double> worst(static_cast<size_t>(std::max<long>(n, 0)), 0.0);
  auto body = [&](long i) {
    std::vector<double> u = grid.at(i);
    BallPoint p = slice_point(f, u);
    std::vector<CTangent> tans = slice_tangents(f, u);
    double local = 0.0;
    for (const FMat3& xf : gens) {
      CTangent kv = killing_vector(xf, p);
      double kn = metric_norm(p, kv);
      if (kn < 1e-10) continue;  // fixed point of this generator on the section
      for (const CTangent& t : tans) {
        double cosv = metric_inner(p, kv, t) / (kn * metric_norm(p, t));
        local = std::max(local, std::abs(cosv));
      }
    }
    worst[i] = local;
  };
#if defined(_OPENMP)
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) body(i);
  } else
#else
  (void)parallel;
#endif
  {
    for (long i = 0; i < n; ++i) body(i);
  }
  double max_cos = 0.0;
  for (double w : worst) max_cos = std::max(max_cos, w);
  return max_cos;
}

OrbitCloud cloud_impl(const CatalogEntry& e, const BallPoint& p0,
                      const GridSpec& grid, bool parallel) {
  if (!in_ball(p0)) throw std::invalid_argument("base point is outside the unit ball");
  OrbitCloud cloud;
  cloud.entry_id = e.id;
  if (grid.axes.empty()) return cloud;
  if (grid.axes.size() != static_cast<size_t>(e.h.dim()))
    throw std::invalid_argument("orbit grid needs one axis per generator");
  std::vector<FMat3> gens;
  for (const LieElt& x : e.h.lie_basis()) gens.push_back(to_float(x));

  const long n = grid.total();
  cloud.rows.assign(static_cast<size_t>(std::max<long>(n, 0)), OrbitRow{});
  auto body = [&](long i) {
    std::vector<double> t = grid.at(i);
    BallPoint p = p0;
    for (int j = static_cast<int>(gens.size()) - 1; j >= 0; --j)
      p = act(expm(t[j] * gens[j]), p);
    cloud.rows[i] = OrbitRow{std::move(t), p};
  };
#if defined(_OPENMP)
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) body(i);
  } else
#else
  (void)parallel;
#endif
  {
    for (long i = 0; i < n; ++i) body(i);
  }
  return cloud;
}

}  // namespace

double orthogonality_scan(const CatalogEntry& e, const GridSpec& grid) {
  return scan_impl(e, grid, true);
}

double orthogonality_scan_serial(const CatalogEntry& e, const GridSpec& grid) {
  return scan_impl(e, grid, false);
}

OrbitCloud orbit_cloud(const CatalogEntry& e, const BallPoint& p0,
                       const GridSpec& grid) {
  return cloud_impl(e, p0, grid, true);
}

OrbitCloud orbit_cloud_serial(const CatalogEntry& e, const BallPoint& p0,
                              const GridSpec& grid) {
  return cloud_impl(e, p0, grid, false);
}

void write_orbit_csv(const OrbitCloud& cloud, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  size_t k = cloud.rows.empty() ? 0 : cloud.rows.front().t.size();
  out << "entry_id";
  for (size_t j = 0; j < k; ++j) out << ",t" << (j + 1);
  out << ",x1,y1,x2,y2\n";
  char buf[64];
  for (const OrbitRow& row : cloud.rows) {
    out << cloud.entry_id;
    auto put = [&](double v) {
      std::snprintf(buf, sizeof buf, ",%.17g", v);
      out << buf;
    };
    for (double tv : row.t) put(tv);
    put(row.p.z1.real());
    put(row.p.z1.imag());
    put(row.p.z2.real());
    put(row.p.z2.imag());
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

void write_orbit_json(const OrbitCloud& cloud, const GridSpec& grid,
                      std::uint64_t seed, const std::string& path) {
  nlohmann::json meta;
  meta["model"] = "unit ball in C^2, form diag(-1,1,1), curvature -1";
  meta["entry"] = cloud.entry_id;
  meta["seed"] = seed;
  meta["tolerances"] = {{"distance_sphere", 1e-8}, {"horosphere", 1e-6}};
  nlohmann::json axes = nlohmann::json::array();
  for (const GridAxis& a : grid.axes)
    axes.push_back({{"lo", a.lo}, {"hi", a.hi}, {"n", a.n}});
  meta["grid"] = axes;
  meta["count"] = cloud.rows.size();

  nlohmann::json rows = nlohmann::json::array();
  for (const OrbitRow& row : cloud.rows) {
    nlohmann::json r;
    r["t"] = row.t;
    r["z"] = {row.p.z1.real(), row.p.z1.imag(), row.p.z2.real(), row.p.z2.imag()};
    rows.push_back(r);
  }
  nlohmann::json doc;
  doc["metadata"] = meta;
  doc["points"] = rows;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << doc.dump(2) << "\n";
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace polarch2

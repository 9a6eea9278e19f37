#pragma once

// Floating-point realization of the complex hyperbolic plane as the unit
// ball in C^2, with the fractional-linear action of the isometry group in
// the same homogeneous coordinates (negative direction first) used by the
// exact layer.  The metric scale is not hardcoded: it is calibrated at the
// origin so Killing-vector lengths match the exact inner product, and the
// curvature value -1 is then a test output.

#include "polarch2/catalog.hpp"

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace polarch2 {

using CD = std::complex<double>;

struct FMat3 {
  std::array<std::array<CD, 3>, 3> m{};

  CD& operator()(int r, int c) { return m[r][c]; }
  const CD& operator()(int r, int c) const { return m[r][c]; }

  static FMat3 identity();
};

FMat3 operator+(const FMat3& a, const FMat3& b);
FMat3 operator*(const FMat3& a, const FMat3& b);
FMat3 operator*(double s, const FMat3& a);

FMat3 to_float(const Mat3& m);
FMat3 to_float(const LieElt& x);
FMat3 to_float(const GroupElt& g);

double max_abs(const FMat3& a);

// Largest entry of g^* Ip g - Ip; zero exactly when g preserves the form.
double su_form_residual(const FMat3& g);

// Scaling-and-squaring exponential; accurate to ~1e-13 for the norms used
// here (validated in tests via ||exp(X) exp(-X) - I||).
FMat3 expm(const FMat3& a);

struct BallPoint {
  CD z1{}, z2{};
};

bool in_ball(const BallPoint& p);

// Fractional-linear action on [1, z1, z2]; throws std::invalid_argument when
// g is too far from the group (form residual >= 1e-10).
BallPoint act(const FMat3& g, const BallPoint& p);

struct CTangent {
  CD v1{}, v2{};
};

// Derivative of act(g, .) at p in direction v.
CTangent dact(const FMat3& g, const BallPoint& p, const CTangent& v);

// X*_p = d/dt exp(tX).p at t = 0, computed analytically.
CTangent killing_vector(const FMat3& xf, const BallPoint& p);
CTangent killing_vector(const LieElt& x, const BallPoint& p);

// Scale of the invariant metric, derived at startup by matching the length
// of the Killing vector of the unit flat generator at the origin.
double calibration_constant();

struct MetricSample {
  BallPoint point;
  std::array<std::array<double, 4>, 4> gram{};  // real coords (x1,y1,x2,y2)
};

MetricSample metric(const BallPoint& p);
double metric_inner(const BallPoint& p, const CTangent& v, const CTangent& w);
double metric_norm(const BallPoint& p, const CTangent& v);

// Geodesic distance in the calibrated metric.
double distance(const BallPoint& a, const BallPoint& b);

// Height function of the horosphere family centered at the boundary point
// (1, 0); level sets are the orbits of the nilpotent part.
double horo_height(const BallPoint& p);

// Holomorphic sectional curvature at p in direction v, via a five-point
// finite-difference Laplacian of the conformal factor of the complex
// geodesic through p; second-order accurate.
double holomorphic_curvature(const BallPoint& p, const CTangent& v);

struct GridAxis {
  double lo = 0, hi = 0;
  int n = 0;
};

struct GridSpec {
  std::vector<GridAxis> axes;

  long total() const;                       // product of axis counts
  std::vector<double> at(long flat) const;  // row-major parameter tuple
};

GridSpec uniform_grid(double lo, double hi, int n, int dims);

// Isometry carrying the standard totally geodesic slice (real points, or the
// first complex coordinate line) onto the section with tangent s at the
// origin; s must be a totally real or complex subspace of p.
struct SectionFrame {
  FMat3 g;
  int dim = 0;
  bool complex_line = false;
};

SectionFrame section_frame(const Subspace& s);

BallPoint slice_point(const SectionFrame& f, const std::vector<double>& u);
std::vector<CTangent> slice_tangents(const SectionFrame& f,
                                     const std::vector<double>& u);

std::vector<BallPoint> section_points(const CatalogEntry& e, const GridSpec& grid);

// Default scan grids: 15x15 over [-1.2, 1.2]^2 for two-dimensional sections,
// 20 points on [-1.2, 1.2] for geodesic ones.
GridSpec default_section_grid(int dim);

// Maximum |cos| between any Killing vector of the acting algebra and any
// tangent of the section surface over the grid; pairs with a numerically
// vanishing Killing vector (fixed points on the section) are skipped.
double orthogonality_scan(const CatalogEntry& e, const GridSpec& grid);
double orthogonality_scan_serial(const CatalogEntry& e, const GridSpec& grid);

struct OrbitRow {
  std::vector<double> t;
  BallPoint p;
};

struct OrbitCloud {
  std::string entry_id;
  std::vector<OrbitRow> rows;
};

// Orbit sample exp(t1 X1) ... exp(tk Xk) . p0 over the grid, where the Xi
// run through the basis of the entry's algebra; the grid must carry one axis
// per generator (an empty grid gives an empty cloud).
OrbitCloud orbit_cloud(const CatalogEntry& e, const BallPoint& p0,
                       const GridSpec& grid);
OrbitCloud orbit_cloud_serial(const CatalogEntry& e, const BallPoint& p0,
                              const GridSpec& grid);

// Exports: CSV columns entry_id, t1..tk, x1, y1, x2, y2; JSON mirror with
// model / grid / tolerance metadata.  I/O failures throw std::runtime_error.
void write_orbit_csv(const OrbitCloud& cloud, const std::string& path);
void write_orbit_json(const OrbitCloud& cloud, const GridSpec& grid,
                      std::uint64_t seed, const std::string& path);

}  // namespace polarch2

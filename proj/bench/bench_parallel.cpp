// Times the parallel kernels against their serial references and confirms
// they produce identical results.  Not part of the test suite; run manually:
//
//   bench_parallel [samples-per-branch] [grid-points-per-axis]

#include "polarch2/ball.hpp"
#include "polarch2/lemma.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace polarch2;

namespace {

template <typename Fn>
double seconds_of(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

void row(const char* name, double serial, double parallel, bool match) {
  std::printf("%-28s %9.3fs %9.3fs %7.2fx   %s\n", name, serial, parallel,
              serial / parallel, match ? "identical" : "MISMATCH");
}

bool same_counts(const BranchCounts& a, const BranchCounts& b) {
  return a.accepted == b.accepted && a.rejected == b.rejected &&
         a.failures == b.failures && a.first_failure == b.first_failure;
}

bool same_suite(const SuiteReport& a, const SuiteReport& b) {
  return same_counts(a.y_nonzero, b.y_nonzero) &&
         same_counts(a.y_zero_c0, b.y_zero_c0) &&
         same_counts(a.y_zero_x0, b.y_zero_x0) &&
         same_counts(a.y_zero_lambda, b.y_zero_lambda) &&
         same_counts(a.generic, b.generic) && a.ok == b.ok;
}

bool same_cloud(const OrbitCloud& a, const OrbitCloud& b) {
  if (a.rows.size() != b.rows.size()) return false;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].t != b.rows[i].t) return false;
    if (a.rows[i].p.z1 != b.rows[i].p.z1 || a.rows[i].p.z2 != b.rows[i].p.z2)
      return false;
  }
  return true;
}

const CatalogEntry& entry(const std::string& id) {
  for (const CatalogEntry& e : catalog())
    if (e.id == id) return e;
  std::abort();
}

}  // namespace

int main(int argc, char** argv) {
  const int samples = argc > 1 ? std::atoi(argv[1]) : 96;
  const int grid_n = argc > 2 ? std::atoi(argv[2]) : 25;
  const std::uint64_t seed = 20260823;

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serially\n");
#endif
  std::printf("%-28s %10s %10s %8s\n", "kernel", "serial", "parallel",
              "speedup");

  {
    SuiteReport rs, rp;
    const double ts =
        seconds_of([&] { rs = run_lemma_suite_serial(samples, seed); });
    const double tp = seconds_of([&] { rp = run_lemma_suite(samples, seed); });
    char name[64];
    std::snprintf(name, sizeof(name), "closure sweep (%d/branch)", samples);
    row(name, ts, tp, same_suite(rs, rp));
  }

  {
    const CatalogEntry& e = entry("ii.b");
    const GridSpec grid = uniform_grid(-1.2, 1.2, grid_n, 2);
    double ms = 0, mp = 0;
    const double ts = seconds_of([&] { ms = orthogonality_scan_serial(e, grid); });
    const double tp = seconds_of([&] { mp = orthogonality_scan(e, grid); });
    char name[64];
    std::snprintf(name, sizeof(name), "orthogonality scan (%dx%d)", grid_n,
                  grid_n);
    row(name, ts, tp, ms == mp);
  }

  {
    const CatalogEntry& e = entry("i.d2");
    const BallPoint p0{{0.3, 0.0}, {0.1, -0.2}};
    const GridSpec grid = uniform_grid(-0.8, 0.8, grid_n, e.h.dim());
    OrbitCloud cs, cp;
    const double ts = seconds_of([&] { cs = orbit_cloud_serial(e, p0, grid); });
    const double tp = seconds_of([&] { cp = orbit_cloud(e, p0, grid); });
    char name[64];
    std::snprintf(name, sizeof(name), "orbit cloud (%d^3 points)", grid_n);
    row(name, ts, tp, same_cloud(cs, cp));
  }

  return 0;
}

#include "polarch2/subspace.hpp"

#include <algorithm>

namespace polarch2 {

namespace {

// Reduce rows in place to canonical reduced row echelon form and drop zero
// rows.  Exact arithmetic, so no pivot tolerance is involved.
void rref(std::vector<Vec8>& rows) {
  size_t lead = 0;
  for (int col = 0; col < 8 && lead < rows.size(); ++col) {
    size_t pivot = lead;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[lead], rows[pivot]);
    QSqrt3 inv = rows[lead][col].inverse();
    for (auto& e : rows[lead]) e = inv * e;
    for (size_t r = 0; r < rows.size(); ++r) {
      if (r == lead || rows[r][col].is_zero()) continue;
      QSqrt3 f = rows[r][col];
      for (int c = 0; c < 8; ++c) rows[r][c] -= f * rows[lead][c];
    }
    ++lead;
  }
  rows.erase(std::remove_if(rows.begin(), rows.end(),
                            [](const Vec8& v) {
                              return std::all_of(v.begin(), v.end(),
                                                 [](const QSqrt3& q) { return q.is_zero(); });
                            }),
             rows.end());
}

// Basis of the solution space of A x = 0, where A is a list of row vectors.
std::vector<Vec8> nullspace(std::vector<Vec8> a) {
  rref(a);
  std::array<int, 8> pivot_row;
  pivot_row.fill(-1);
  for (size_t r = 0; r < a.size(); ++r) {
    for (int c = 0; c < 8; ++c) {
      if (!a[r][c].is_zero()) {
        pivot_row[c] = static_cast<int>(r);
        break;
      }
    }
  }
  std::vector<Vec8> basis;
  for (int free = 0; free < 8; ++free) {
    if (pivot_row[free] != -1) continue;
    Vec8 v{};
    v[free] = QSqrt3(1);
    for (int c = 0; c < 8; ++c)
      if (pivot_row[c] != -1) v[c] = -a[pivot_row[c]][free];
    basis.push_back(v);
  }
  return basis;
}

}  // namespace

Vec8 operator+(const Vec8& x, const Vec8& y) {
  Vec8 r;
  for (int i = 0; i < 8; ++i) r[i] = x[i] + y[i];
  return r;
}

Vec8 operator-(const Vec8& x, const Vec8& y) {
  Vec8 r;
  for (int i = 0; i < 8; ++i) r[i] = x[i] - y[i];
  return r;
}

Vec8 operator*(const QSqrt3& s, const Vec8& x) {
  Vec8 r;
  for (int i = 0; i < 8; ++i) r[i] = s * x[i];
  return r;
}

QSqrt3 dot(const Vec8& x, const Vec8& y) {
  QSqrt3 acc;
  for (int i = 0; i < 8; ++i) acc += x[i] * y[i];
  return acc;
}

QSqrt3 form_value(const Mat8& g, const Vec8& x, const Vec8& y) {
  QSqrt3 acc;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) acc += x[i] * g[i][j] * y[j];
  return acc;
}

Vec8 mat_vec(const Mat8& a, const Vec8& x) {
  Vec8 r{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) r[i] += a[i][j] * x[j];
  return r;
}

Subspace Subspace::span(const std::vector<Vec8>& gens) {
  Subspace s;
  s.rows_ = gens;
  rref(s.rows_);
  return s;
}

Subspace Subspace::span_elts(const std::vector<LieElt>& gens) {
  std::vector<Vec8> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back(std_coords(g));
  return span(rows);
}

Subspace Subspace::full() {
  std::vector<Vec8> rows;
  for (int i = 0; i < 8; ++i) {
    Vec8 v{};
    v[i] = QSqrt3(1);
    rows.push_back(v);
  }
  return span(rows);
}

std::vector<LieElt> Subspace::lie_basis() const {
  std::vector<LieElt> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(from_std_coords(r));
  return out;
}

bool Subspace::contains(const Vec8& v) const {
  Vec8 rem = v;
  for (const auto& row : rows_) {
    int lead = -1;
    for (int c = 0; c < 8; ++c)
      if (!row[c].is_zero()) {
        lead = c;
        break;
      }
    if (lead >= 0 && !rem[lead].is_zero()) rem = rem - rem[lead] * row;
  }
  return std::all_of(rem.begin(), rem.end(), [](const QSqrt3& q) { return q.is_zero(); });
}

bool Subspace::contains(const Subspace& other) const {
  return std::all_of(other.rows_.begin(), other.rows_.end(),
                     [this](const Vec8& v) { return contains(v); });
}

Subspace sum(const Subspace& u, const Subspace& v) {
  std::vector<Vec8> rows = u.basis();
  rows.insert(rows.end(), v.basis().begin(), v.basis().end());
  return Subspace::span(rows);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  // The standard dot product is definite on a subfield of R, so
  // u ∩ v = complement(complement(u) + complement(v)) holds exactly.
  std::vector<Vec8> constraints;
  for (const auto& n : nullspace(u.basis())) constraints.push_back(n);
  for (const auto& n : nullspace(v.basis())) constraints.push_back(n);
  return Subspace::span(nullspace(std::move(constraints)));
}

Subspace ortho_complement(const Subspace& s, const Mat8& g) {
  // y is in the complement iff (b^T g) y = 0 for each basis row b.
  std::vector<Vec8> constraints;
  for (const auto& b : s.basis()) {
    Vec8 row{};
    for (int j = 0; j < 8; ++j)
      for (int i = 0; i < 8; ++i) row[j] += b[i] * g[i][j];
    constraints.push_back(row);
  }
  return Subspace::span(nullspace(std::move(constraints)));
}

Subspace ortho_complement_in(const Subspace& s, const Subspace& ambient, const Mat8& g) {
  return intersect(ortho_complement(s, g), ambient);
}

Vec8 project(const Vec8& x, const Subspace& s, const Mat8& g) {
  // Solve the k x k normal system (B g B^T) c = B g x exactly, k = dim s.
  const auto& b = s.basis();
  int k = s.dim();
  if (k == 0) return Vec8{};
  std::vector<std::vector<QSqrt3>> m(k, std::vector<QSqrt3>(k + 1));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) m[i][j] = form_value(g, b[i], b[j]);
    m[i][k] = form_value(g, b[i], x);
  }
  // Gaussian elimination; the Gram matrix of independent vectors under a
  // definite form is invertible, so a pivot always exists.
  for (int col = 0; col < k; ++col) {
    int pivot = col;
    while (m[pivot][col].is_zero()) ++pivot;
    std::swap(m[col], m[pivot]);
    QSqrt3 inv = m[col][col].inverse();
    for (auto& e : m[col]) e = inv * e;
    for (int r = 0; r < k; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      QSqrt3 f = m[r][col];
      for (int c = col; c <= k; ++c) m[r][c] -= f * m[col][c];
    }
  }
  Vec8 out{};
  for (int i = 0; i < k; ++i) out = out + m[i][k] * b[i];
  return out;
}

Subspace image(const Mat8& a, const Subspace& s) {
  std::vector<Vec8> rows;
  rows.reserve(s.basis().size());
  for (const auto& b : s.basis()) rows.push_back(mat_vec(a, b));
  return Subspace::span(rows);
}

Subspace kernel(const Mat8& a) {
  std::vector<Vec8> rows;
  rows.reserve(8);
  for (const auto& r : a) rows.push_back(r);
  return Subspace::span(nullspace(std::move(rows)));
}

std::optional<Mat8> invert8(const Mat8& a) {
  // Gauss-Jordan on [a | I].
  std::array<std::array<QSqrt3, 16>, 8> m{};
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) m[i][j] = a[i][j];
    m[i][8 + i] = QSqrt3(1);
  }
  for (int col = 0; col < 8; ++col) {
    int pivot = col;
    while (pivot < 8 && m[pivot][col].is_zero()) ++pivot;
    if (pivot == 8) return std::nullopt;
    std::swap(m[col], m[pivot]);
    QSqrt3 inv = m[col][col].inverse();
    for (auto& e : m[col]) e = inv * e;
    for (int r = 0; r < 8; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      QSqrt3 f = m[r][col];
      for (int c = 0; c < 16; ++c) m[r][c] -= f * m[col][c];
    }
  }
  Mat8 out{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) out[i][j] = m[i][8 + j];
  return out;
}

SubalgebraCheck is_subalgebra(const Subspace& s) {
  auto elts = s.lie_basis();
  for (size_t i = 0; i < elts.size(); ++i)
    for (size_t j = i + 1; j < elts.size(); ++j) {
      LieElt br = bracket(elts[i], elts[j]);
      if (!s.contains(br))
        return {false, static_cast<int>(i), static_cast<int>(j), br};
    }
  return {};
}

bool is_real(const Subspace& s, const Mat8& j, const Mat8& g) {
  for (const auto& x : s.basis())
    for (const auto& y : s.basis())
      if (!form_value(g, mat_vec(j, x), y).is_zero()) return false;
  return true;
}

bool is_complex(const Subspace& s, const Mat8& j) { return image(j, s) == s; }

std::array<int, 3> signature_of_form(std::vector<std::vector<QSqrt3>> m) {
  const int n = static_cast<int>(m.size());
  std::array<int, 3> sig{0, 0, 0};
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    // Prefer a live diagonal pivot.
    int piv = -1;
    for (int i = 0; i < n; ++i)
      if (!done[i] && !m[i][i].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) {
      // All remaining diagonal entries vanish; a nonzero off-diagonal pair
      // (i,j) contributes one plus and one minus after the hyperbolic change
      // of basis e_i ± e_j.
      int a = -1, b = -1;
      for (int i = 0; i < n && a < 0; ++i)
        for (int j = i + 1; j < n && a < 0; ++j)
          if (!done[i] && !done[j] && !m[i][j].is_zero()) {
            a = i;
            b = j;
          }
      if (a < 0) break;  // form is zero on the rest
      // Replace row/col a by e_a + e_b so the new (a,a) entry 2 m[a][b] != 0.
      for (int t = 0; t < n; ++t) {
        m[a][t] += m[b][t];
      }
      for (int t = 0; t < n; ++t) {
        m[t][a] += m[t][b];
      }
      piv = a;
    }
    QSqrt3 d = m[piv][piv];
    (d.sign() > 0 ? sig[0] : sig[1])++;
    done[piv] = true;
    // Clear the pivot's row and column on the live block.
    QSqrt3 inv = d.inverse();
    for (int i = 0; i < n; ++i) {
      if (done[i] || m[i][piv].is_zero()) continue;
      QSqrt3 f = m[i][piv] * inv;
      for (int t = 0; t < n; ++t) m[i][t] -= f * m[piv][t];
      for (int t = 0; t < n; ++t) m[t][i] -= f * m[t][piv];
    }
  }
  sig[2] = n - sig[0] - sig[1];
  return sig;
}

}  // namespace polarch2

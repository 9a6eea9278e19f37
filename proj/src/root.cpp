#include "polarch2/root.hpp"

#include <sstream>

namespace polarch2 {

namespace {

const ExactScalar kEOne{QSqrt3(1)};
const ExactScalar kEI = ExactScalar::i();
const QSqrt3 kHalf{Rational(1) / 2};

Mat3 entry(int r, int c, ExactScalar v) {
  Mat3 m;
  m(r, c) = std::move(v);
  return m;
}

// Matrix built from an integer pattern scaled by s.
Mat3 pattern(const int (&rows)[3][3], const ExactScalar& s) {
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = ExactScalar(rows[i][j]) * s;
  return m;
}

using Coords = std::array<QSqrt3, 8>;

Coords coeff(int idx, Rational value) {
  Coords c{};
  c[idx] = QSqrt3(std::move(value));
  return c;
}

// Frozen multiplication table in canonical coordinates: entry (i,j) with
// i < j holds the coordinates of [e_i, e_j].
const std::array<std::array<Coords, 8>, 8>& frozen_table() {
  static const auto table = [] {
    std::array<std::array<Coords, 8>, 8> t{};
    auto set = [&t](int i, int j, Coords c) {
      t[i][j] = c;
      for (auto& q : c) q = -q;
      t[j][i] = c;
    };
    const Rational one(1), half = Rational(1) / 2, tq = Rational(3) / 2;
    set(kThetaZ, kB, coeff(kThetaZ, one));
    set(kThetaZ, kU1, coeff(kThetaU2, one));
    set(kThetaZ, kU2, coeff(kThetaU1, -one));
    set(kThetaZ, kZ, coeff(kB, 2));
    set(kThetaU1, kThetaU2, coeff(kThetaZ, one));
    set(kThetaU1, kT, coeff(kThetaU2, -one));
    set(kThetaU1, kB, coeff(kThetaU1, half));
    set(kThetaU1, kU1, coeff(kB, one));
    set(kThetaU1, kU2, coeff(kT, tq));
    set(kThetaU1, kZ, coeff(kU2, -one));
    set(kThetaU2, kT, coeff(kThetaU1, one));
    set(kThetaU2, kB, coeff(kThetaU2, half));
    set(kThetaU2, kU1, coeff(kT, -tq));
    set(kThetaU2, kU2, coeff(kB, one));
    set(kThetaU2, kZ, coeff(kU1, one));
    set(kT, kU1, coeff(kU2, one));
    set(kT, kU2, coeff(kU1, -one));
    set(kB, kU1, coeff(kU1, half));
    set(kB, kU2, coeff(kU2, half));
    set(kB, kZ, coeff(kZ, one));
    set(kU1, kU2, coeff(kZ, one));
    // All remaining pairs bracket to zero: (thetaZ,thetaU1), (thetaZ,thetaU2),
    // (thetaZ,T), (T,B), (T,Z), (U1,Z), (U2,Z).
    return t;
  }();
  return table;
}

// Pinned Gram of the canonical basis.
const std::array<Rational, 8>& pinned_gram_diag() {
  static const std::array<Rational, 8> d = {2, 2, 2, Rational(4) / 3, 1, 2, 2, 2};
  return d;
}

Mat8 sub_lambda(const Mat8& m, const QSqrt3& lambda) {
  Mat8 r = m;
  for (int i = 0; i < 8; ++i) r[i][i] -= lambda;
  return r;
}

}  // namespace

LieElt choose_a() {
  return LieElt(entry(0, 1, kHalf * kEOne) + entry(1, 0, kHalf * kEOne));
}

RootDecomp decompose(const LieElt& a_gen) {
  if (a_gen.is_zero()) throw std::invalid_argument("flat generator must be nonzero");
  if (!split(a_gen).first.is_zero())
    throw std::invalid_argument("flat generator must lie in the symmetric part");
  QSqrt3 norm2 = inner(a_gen, a_gen);
  auto norm = qsqrt3_sqrt(norm2);
  if (!norm) throw std::domain_error("flat generator has no exact unit normalization");
  RootDecomp d;
  d.a_unit = norm->inverse() * a_gen;
  d.a = Subspace::span_elts({d.a_unit});

  Mat8 ad = ad_matrix(d.a_unit);
  d.g0 = kernel(ad);
  d.g_alpha = kernel(sub_lambda(ad, QSqrt3(Rational(1) / 2)));
  d.g_2alpha = kernel(sub_lambda(ad, QSqrt3(1)));
  d.g_malpha = kernel(sub_lambda(ad, QSqrt3(Rational(-1) / 2)));
  d.g_m2alpha = kernel(sub_lambda(ad, QSqrt3(-1)));
  if (d.g0.dim() != 2 || d.g_alpha.dim() != 2 || d.g_2alpha.dim() != 1 ||
      d.g_malpha.dim() != 2 || d.g_m2alpha.dim() != 1)
    throw std::logic_error("restricted-root multiplicities must be (2,2,1)");

  std::vector<LieElt> k_gens;
  for (const auto& b : std_basis()) k_gens.push_back(b + cartan_theta(b));
  d.k0 = intersect(d.g0, Subspace::span_elts(k_gens));
  if (d.k0.dim() != 1) throw std::logic_error("centralizer of the flat in k must be a line");
  return d;
}

const std::array<LieElt, 8>& canonical_basis() {
  static const std::array<LieElt, 8> basis = [] {
    const ExactScalar ih = kHalf * kEI;  // i/2
    const int z_pat[3][3] = {{1, -1, 0}, {1, -1, 0}, {0, 0, 0}};
    const int u1_pat[3][3] = {{0, 0, 1}, {0, 0, 1}, {1, -1, 0}};
    const int u2_pat[3][3] = {{0, 0, -1}, {0, 0, -1}, {1, -1, 0}};
    LieElt Z{pattern(z_pat, ih)};
    LieElt U1{pattern(u1_pat, ExactScalar(kHalf))};
    LieElt U2{pattern(u2_pat, ih)};
    LieElt T{Mat3::diag(QSqrt3(Rational(-1) / 3) * kEI, QSqrt3(Rational(-1) / 3) * kEI,
                        QSqrt3(Rational(2) / 3) * kEI)};
    LieElt B = choose_a();
    std::array<LieElt, 8> e;
    e[kThetaZ] = cartan_theta(Z);
    e[kThetaU1] = cartan_theta(U1);
    e[kThetaU2] = cartan_theta(U2);
    e[kT] = T;
    e[kB] = B;
    e[kU1] = U1;
    e[kU2] = U2;
    e[kZ] = Z;
    return e;
  }();
  return basis;
}

bool verify_bracket_display(std::string* report) {
  const auto& e = canonical_basis();
  Mat8 to_std{};
  for (int j = 0; j < 8; ++j) {
    auto col = std_coords(e[j]);
    for (int i = 0; i < 8; ++i) to_std[i][j] = col[i];
  }
  auto to_canon = invert8(to_std);
  bool ok = true;
  std::ostringstream log;
  if (!to_canon) {
    ok = false;
    log << "canonical basis is linearly dependent\n";
  } else {
    const auto& table = frozen_table();
    static const char* names[8] = {"thZ", "thU1", "thU2", "T", "B", "U1", "U2", "Z"};
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        Coords got = mat_vec(*to_canon, std_coords(bracket(e[i], e[j])));
        if (got != table[i][j]) {
          ok = false;
          log << "bracket [" << names[i] << "," << names[j] << "] deviates from the table\n";
        }
      }
    for (int i = 0; i < 8; ++i)
      for (int j = 0; j < 8; ++j) {
        QSqrt3 want = i == j ? QSqrt3(pinned_gram_diag()[i]) : QSqrt3(0);
        if (inner(e[i], e[j]) != want) {
          ok = false;
          log << "inner(" << names[i] << "," << names[j] << ") deviates from the display\n";
        }
      }
  }
  if (report) *report += log.str();
  return ok;
}

Mat4q an_metric() {
  const auto& e = canonical_basis();
  const std::array<LieElt, 4> frame = {e[kB], e[kU1], e[kU2], e[kZ]};
  Subspace an = Subspace::span_elts({frame.begin(), frame.end()});
  if (!is_subalgebra(an).closed)
    throw std::logic_error("solvable frame must span a subalgebra");
  Mat4q g{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = inner(frame[i], frame[j]);
  const Rational want[4] = {1, 2, 2, 2};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (g[i][j] != QSqrt3(i == j ? want[i] : Rational(0)))
        throw std::logic_error("solvable-frame metric must be diag(1,2,2,2)");
  return g;
}

StructureContext::StructureContext() {
  basis_ = canonical_basis();
  std::string report;
  if (!verify_bracket_display(&report))
    throw std::logic_error("canonical structure failed validation: " + report);

  decomp_ = decompose(choose_a());
  std::vector<LieElt> k_gens, p_gens;
  for (const auto& b : std_basis()) {
    k_gens.push_back(b + cartan_theta(b));
    p_gens.push_back(b - cartan_theta(b));
  }
  k_ = Subspace::span_elts(k_gens);
  p_ = Subspace::span_elts(p_gens);
  n_ = sum(decomp_.g_alpha, decomp_.g_2alpha);
  if (k_.dim() != 4 || p_.dim() != 4 || n_.dim() != 3)
    throw std::logic_error("Cartan split dimensions must be (4,4) with a 3-dim nilpotent part");

  auto in = [](const Subspace& s, const LieElt& x) { return s.contains(x); };
  if (!in(decomp_.g_alpha, basis_[kU1]) || !in(decomp_.g_alpha, basis_[kU2]) ||
      !in(decomp_.g_2alpha, basis_[kZ]) || !in(decomp_.g_malpha, basis_[kThetaU1]) ||
      !in(decomp_.g_malpha, basis_[kThetaU2]) || !in(decomp_.g_m2alpha, basis_[kThetaZ]) ||
      !in(decomp_.k0, basis_[kT]) || !in(decomp_.a, basis_[kB]))
    throw std::logic_error("canonical basis must align with the root spaces");

  // zeta0 = (1/2)(T - Z - theta Z) spans the center of k; its ad squares to
  // -1 on p, sends B to +(1/2)(1-theta)Z, and rotates the alpha-plane the
  // same way ad(T) rotates g_alpha -- the multiplication by i of the disk.
  zeta0_ = kHalf * (basis_[kT] - basis_[kZ] - basis_[kThetaZ]);
  for (const auto& kb : k_.lie_basis())
    if (!bracket(zeta0_, kb).is_zero())
      throw std::logic_error("zeta0 must centralize the compact part");
  j_std_ = ad_matrix(zeta0_);
  for (const auto& pb : p_.basis()) {
    Vec8 twice = mat_vec(j_std_, mat_vec(j_std_, pb));
    if (twice != QSqrt3(-1) * pb)
      throw std::logic_error("the complex structure must square to -1 on p");
  }
  LieElt jB = bracket(zeta0_, basis_[kB]);
  if (jB != QSqrt3(Rational(1) / 2) * (basis_[kZ] - basis_[kThetaZ]))
    throw std::logic_error("complex-structure orientation is pinned to the disk");
  LieElt jU1 = bracket(zeta0_, basis_[kU1] - basis_[kThetaU1]);
  if (jU1 != basis_[kU2] - basis_[kThetaU2])
    throw std::logic_error("complex structure must rotate the alpha-plane like ad(T)");

  const auto& sb = std_basis();
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) gram_std_[i][j] = inner(sb[i], sb[j]);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) gram_canonical_[i][j] = inner(basis_[i], basis_[j]);

  for (int j = 0; j < 8; ++j) {
    auto col = std_coords(basis_[j]);
    for (int i = 0; i < 8; ++i) canon_to_std_[i][j] = col[i];
  }
  auto inv = invert8(canon_to_std_);
  if (!inv) throw std::logic_error("canonical basis must be invertible over std coordinates");
  std_to_canon_ = *inv;

  p_basis_ = {basis_[kB], basis_[kU1] - basis_[kThetaU1], basis_[kU2] - basis_[kThetaU2],
              kHalf * (basis_[kZ] - basis_[kThetaZ])};
  const Rational want[4] = {1, 4, 4, 1};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      gram_p_[i][j] = inner(p_basis_[i], p_basis_[j]);
      if (gram_p_[i][j] != QSqrt3(i == j ? want[i] : Rational(0)))
        throw std::logic_error("symmetric-part frame must have Gram diag(1,4,4,1)");
    }
}

const StructureContext& StructureContext::get() {
  static const StructureContext ctx;
  return ctx;
}

std::array<QSqrt3, 8> StructureContext::canonical_coords(const LieElt& x) const {
  return mat_vec(std_to_canon_, std_coords(x));
}

LieElt StructureContext::from_canonical(const std::array<QSqrt3, 8>& c) const {
  return from_std_coords(mat_vec(canon_to_std_, c));
}

}  // namespace polarch2

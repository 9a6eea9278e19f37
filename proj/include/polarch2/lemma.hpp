#pragma once

// Replay of the two-dimensional-subalgebra analysis: closure equations for
// h = span(T + xi, eta) inside the parabolic part, the branch split they
// force, the three explicit conjugations bringing each branch to a normal
// form, and the impossibility computations that close the remaining gaps.
// Everything here is exact; randomness only picks rational sample points.

#include "polarch2/criterion.hpp"

#include <cstdint>
#include <optional>

namespace polarch2 {

// One sampled configuration h = span(T + xi, eta) with
//   T = tau * (canonical T),  xi = a B + X + b Z,  eta = c B + Y + d Z,
// where X, Y lie in g_alpha and <X, Y> = 0.
struct LemmaSample {
  QSqrt3 tau;
  QSqrt3 a, b, c, d;
  LieElt X, Y;
};

LieElt sample_T(const LemmaSample& s);
LieElt sample_xi(const LemmaSample& s);
LieElt sample_eta(const LemmaSample& s);
Subspace sample_h(const LemmaSample& s);

// Outcome of requiring [T + xi, eta] ∈ R*eta and splitting the identity
// lambda*eta = [T + xi, eta] into components:
//   (lc)    lambda c = 0                          (flat component)
//   (XY)    lambda Y = (a/2) Y - (c/2) X + [T,Y]  (alpha component)
//   (abcd)  lambda d = a d - b c + (1/2)<[X,Y],Z> (2-alpha component)
struct ClosureResult {
  bool closed = false;
  QSqrt3 lambda;
  bool eq_lc = false;
  bool eq_XY = false;
  bool eq_abcd = false;
};

ClosureResult closure_equations(const LemmaSample& s);

// A conjugation g together with the image of the branch's subalgebra; the
// construction throws if any of the exact identities it asserts fails.
struct Conjugation {
  GroupElt g;
  Subspace image;
};

// From [T,[T,X]] = -rho X with rho > 0: g = exp(-(1/rho)[T,X]) maps
// span(T+X) ⊕ g_2alpha onto k0 ⊕ g_2alpha and fixes Z.
Conjugation case_a_conjugation(const LieElt& T, const LieElt& X);

// g = exp((b/a) Z) maps k0 ⊕ R(aB + bZ) onto g0 and fixes T.
Conjugation case_b_conjugation(const QSqrt3& a, const QSqrt3& b);

// After rescaling T so that [[T,Y],Y] = 2Z: g = exp(Y + (d/2)Z) sends
// T + [T,Y] + Z to the rescaled T and 2B + Y + dZ to 2B, so the abelian
// algebra they span goes onto g0.
Conjugation case_c_conjugation(const LieElt& T, const LieElt& Y, const QSqrt3& d);

struct ImpossibilityReport {
  bool residual_matches_norm = false;  // <Z,[(1-theta)U,(1-theta)JU]> = <Z,[U,JU]> = |U|^2
  QSqrt3 residual_u1;                  // the value at U = U1 (expected 2)
  bool real_iff_a_zero = false;        // span{(1-theta)JX, -|X|^2 B + a(1-theta)X}
  bool complex_never = false;          //   is real exactly when a = 0 and never complex
  bool k0_galpha_not_closed = false;   // k0 ⊕ g_alpha fails the bracket
  bool k0_a_g2alpha_cohom_one = false; // k0 ⊕ a ⊕ g_2alpha acts with cohomogeneity 1
  bool ok = false;
};

ImpossibilityReport impossibility_checks();

// Sweep bookkeeping.  rejected counts samples whose h fails the closure
// precondition (legitimate for unconstrained draws); failures counts samples
// where closure held but a forced consequence did not, and must stay zero.
struct BranchCounts {
  int accepted = 0;
  int rejected = 0;
  int failures = 0;
  std::string first_failure;  // note for the lowest-index failing sample
};

struct SuiteReport {
  BranchCounts y_nonzero;     // abelian branch, normalized and conjugated to g0
  BranchCounts y_zero_c0;     // case (a) branch, conjugated to k0 ⊕ g_2alpha
  BranchCounts y_zero_x0;     // case (b) branch, conjugated to g0
  BranchCounts y_zero_lambda; // lambda != 0 branch: no section survives
  BranchCounts generic;       // unconstrained draws: reject or satisfy all equations
  ImpossibilityReport impossibility;
  int samples_per_branch = 0;
  std::uint64_t seed = 0;
  bool ok = false;
};

// Parallel sweep (OpenMP when available) and the serial reference; both
// produce identical reports for identical arguments.
SuiteReport run_lemma_suite(int samples_per_branch, std::uint64_t seed);
SuiteReport run_lemma_suite_serial(int samples_per_branch, std::uint64_t seed);

}  // namespace polarch2

#pragma once

// The classified list of polar actions: for each entry, exact generators of
// the acting subalgebra h and of its section through the base point, plus the
// expected cohomogeneity.  A companion list of near-miss configurations
// documents how each sufficient condition fails when violated.

#include "polarch2/criterion.hpp"

namespace polarch2 {

struct CatalogEntry {
  std::string id;           // "i.a" ... "ii.d"
  std::string description;  // what the acting algebra is
  Subspace h;
  Subspace s;
  int expected_cohom;
};

const std::vector<CatalogEntry>& catalog();

// Failure modes exercised by the negative list.
enum class FailureKind { closure, slice_dimension, bracket };

struct NegativeEntry {
  std::string id;
  std::string description;
  Subspace h;
  Subspace s;
  FailureKind expected;
};

const std::vector<NegativeEntry>& negative_catalog();

struct EntryResult {
  std::string id;
  PolarityReport report;
  int expected_cohom = 0;
  bool cohom_ok = false;
  bool ok = false;  // verdict and cohomogeneity both as expected
};

EntryResult verify_entry(const CatalogEntry& e);
std::vector<EntryResult> verify_catalog();

struct NegativeResult {
  std::string id;
  PolarityReport report;
  bool failed_as_expected = false;
};

NegativeResult verify_negative(const NegativeEntry& e);
std::vector<NegativeResult> verify_negative_catalog();

// Catalog with entry ii.b's section replaced by the rotation-invariant plane,
// which breaks both transversality and bracket orthogonality; used to confirm
// the checker actually fails on bad input.
std::vector<CatalogEntry> catalog_with_injected_fault();

// Inertia of the ad-trace form restricted to h.
std::array<int, 3> killing_signature(const Subspace& h);

}  // namespace polarch2

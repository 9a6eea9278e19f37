#pragma once

// Assembles the verification suites into one machine-readable document:
// exact structure checks of the root decomposition, the catalog of polar
// actions with verdicts, the counterexample list, the randomized closure
// sweep, and the numerical orthogonality scans.  The JSON report is fully
// determined by the configuration -- no timestamps, no thread counts -- so
// identical configs produce identical bytes.  The text and markdown
// renderings read from the same document.
//
// Also home of the input parsing for ad-hoc checks: subspaces arrive either
// as coordinate vectors over the canonical basis or as raw 3x3 matrices that
// are converted and validated.

#include "polarch2/ball.hpp"
#include "polarch2/lemma.hpp"

#include "json.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace polarch2 {

using Json = nlohmann::json;

struct VerifyConfig {
  int samples = 128;              // closure-sweep samples per branch
  std::uint64_t seed = 20260823;  // drives every randomized piece
  int tuples = 100;               // random tuples for the product-rule check
  bool inject_fault = false;      // swap in the deliberately wrong section
};

// Render an exact element as a combination of the canonical basis, e.g.
// "U1 - theta(U1)" or "(1/2) U1"; the zero element renders as "0".
std::string describe_canonical(const LieElt& x);
std::string describe_subspace(const Subspace& s);

// Exact checks of the pinned structure: root-space dimensions, the theta
// pairing of opposite spaces, bracket inclusions on all basis pairs, the
// pinned Gram values, the solvable-model product rule on seeded random
// rational tuples, and the trace-form oracle on all basis pairs.
Json structure_report(int tuples, std::uint64_t seed);

Json catalog_report(const std::vector<CatalogEntry>& entries);
Json counterexample_report();
Json lemma_report(int samples_per_branch, std::uint64_t seed);
Json scan_report(const std::vector<CatalogEntry>& entries);

Json build_verify_report(const VerifyConfig& cfg);
bool report_ok(const Json& report);

std::string render_text(const Json& report);
std::string render_markdown(const Json& report);

// Raised on malformed input; the message names the offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subspace from a JSON document with either a "coordinates" key (vectors of
// eight entries over the canonical basis; entries are integers or exact
// strings like "-3/2") or a "matrices" key (3x3 complex matrices, each entry
// a [re, im] pair).  Raw matrices are validated against the algebra.
// `where` names the document in diagnostics.  Throws ConfigError.
Subspace subspace_from_json(const Json& doc, const std::string& where);
Subspace load_subspace_file(const std::string& path);

// Polarity report for an ad-hoc pair, as one JSON object.
Json check_report(const Subspace& h, const Subspace& s);

}  // namespace polarch2

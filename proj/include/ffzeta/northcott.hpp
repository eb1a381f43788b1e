#pragma once

#include <string>
#include <vector>

#include "ffzeta/poly.hpp"
#include "ffzeta/zetafn.hpp"

namespace ffzeta {

// Dedupe granularity for the hyperelliptic enumeration. Raw keeps every
// squarefree D; AffineOrbit keeps one representative per orbit of D under
// T -> aT + b with a a nonzero square (the substitutions that preserve the
// field and its zeta function for odd-degree models); ByLPolynomial keeps
// one curve per distinct L, an isogeny-class lower bound.
enum class DedupeMode { Raw, AffineOrbit, ByLPolynomial };

std::string dedupe_name(DedupeMode mode);
DedupeMode dedupe_from_string(const std::string& name);

struct EnumerationScope {
  long long q = 5;
  int genus_min = 0;
  int genus_max = 2;
  DedupeMode dedupe = DedupeMode::Raw;
  long long budget = 100000000;
};

struct FieldEntry {
  Poly D;
  int genus = 0;
  LPolynomial L;
};

// All squarefree monic D of degree 2g + 1 for g in the scope range, genus
// ascending and lexicographic within a genus, with the scope's dedupe
// applied. The hard genus cap is 8 (q^(2g+1) curves are materialized).
std::vector<FieldEntry> enumerate_fields(const EnumerationScope& scope,
                                         int threads = 1);

struct MemberRow {
  Poly D;
  int genus = 0;
  long long h = 0;        // class number L(1)
  int order = 0;          // vanishing order of zeta at s (negative = pole)
  double abs_leading = 0; // |zeta^*_K(s)|
};

struct NorthcottReport {
  std::vector<MemberRow> members;
  bool complete_within_scope = false;
  std::string scope_caveat;
  bool has_genus_cap = false;
  int genus_cap_used = 0;
  long long enumerated = 0;
};

// Materializes S_{q,s,B} over the enumerated fields: members are the curves
// with |zeta^*_K(s)| <= B. When the point classifies as Northcott, the
// genus range is widened to the proven genus cap and the report certifies
// completeness within the hyperelliptic scope. plain_central_value switches
// membership at s = 1/2 to the raw value zeta_K(1/2), counting exact
// central zeros as members regardless of their leading coefficient.
NorthcottReport compute_S(long long q, Cplx s, double B,
                          EnumerationScope scope, int threads = 1,
                          bool plain_central_value = false);

enum class WitnessProperty { MemberOfS, CentralZero };

struct Witness {
  Poly D;
  Cplx value;
  bool exact_zero = false;
  WitnessProperty property = WitnessProperty::CentralZero;
};

struct CentralZeroReport {
  std::vector<Witness> witnesses;
  bool verified_empty = false;
  std::string certificate;
  int max_deg = 0;
  long long searched = 0;
};

// Exhaustive search for exact central zeros L(q^(-1/2)) = 0 over squarefree
// monic D of odd degree up to max_deg. Every witness passes the exact
// divisibility test and a numeric recheck; an empty result carries a
// verified-empty certificate for the searched range.
CentralZeroReport central_zero_search(long long q, int max_deg,
                                      long long budget = 100000000,
                                      int threads = 1);

}  // namespace ffzeta

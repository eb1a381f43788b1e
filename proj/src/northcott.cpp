#include "ffzeta/northcott.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>

#include "ffzeta/bounds.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/numutil.hpp"
#include "ffzeta/parallel.hpp"
#include "ffzeta/sieve.hpp"

namespace ffzeta {

namespace {

constexpr int kGenusGuard = 8;

// substitutions T -> aT + b with a a nonzero square preserve both the field
// and L; the orbit representative is the index-minimal image
bool orbit_minimal(const Poly& D) {
  FieldRef F = D.field();
  long long self = D.monic_index();
  for (const FieldElement& a : fe_enumerate(F)) {
    if (a.is_zero() || fe_is_square(a) <= 0) continue;
    for (const FieldElement& b : fe_enumerate(F)) {
      Poly sub = Poly::from_ranks(F, {b.rank, a.rank});
      Poly image = poly_compose(D, sub).monic();
      if (image.monic_index() < self) return false;
    }
  }
  return true;
}

LPolynomial trivial_lpoly(long long q) {
  LPolynomial L;
  L.q = q;
  L.genus = 0;
  L.c = {1};
  return L;
}

long long raw_count(long long q, int genus_min, int genus_max,
                    const char* what) {
  long long total = 0;
  for (int g = genus_min; g <= genus_max; ++g)
    total += ipow_checked(q, 2 * g + 1, what);
  return total;
}

std::vector<FieldEntry> enumerate_genus(const FieldRef& field, int g,
                                        DedupeMode dedupe, int threads) {
  long long q = field->q();
  int n = 2 * g + 1;
  long long total = ipow_checked(q, n, "enumerate_fields");
  IrreducibleTable table;
  if (g >= 1) table = irreducible_table(field, g);

  auto blocks = run_blocks<std::vector<FieldEntry>>(
      total, 512, threads,
      [&](long long lo, long long hi) {
        std::vector<FieldEntry> out;
        for (long long N = lo; N < hi; ++N) {
          Poly D = monic_by_index(field, n, N);
          if (!is_squarefree(D)) continue;
          if (dedupe == DedupeMode::AffineOrbit && !orbit_minimal(D)) continue;
          FieldEntry e;
          e.D = D;
          e.genus = g;
          if (g == 0) {
            e.L = trivial_lpoly(q);
          } else {
            PrimeCounts counts =
                prime_counts_via_splitting(CurveModel::make(field, D), g, table);
            e.L = lpoly_from_prime_counts(counts, q, g);
          }
          out.push_back(std::move(e));
        }
        return out;
      });

  std::vector<FieldEntry> entries;
  for (auto& b : blocks)
    for (auto& e : b) entries.push_back(std::move(e));

  if (dedupe == DedupeMode::ByLPolynomial) {
    std::set<std::vector<long long>> seen;
    std::vector<FieldEntry> kept;
    for (auto& e : entries)
      if (seen.insert(e.L.c).second) kept.push_back(std::move(e));
    entries = std::move(kept);
  }
  return entries;
}

}  // namespace

std::string dedupe_name(DedupeMode mode) {
  switch (mode) {
    case DedupeMode::Raw:
      return "raw";
    case DedupeMode::AffineOrbit:
      return "affine_orbit";
    case DedupeMode::ByLPolynomial:
      return "by_lpolynomial";
  }
  return "raw";
}

DedupeMode dedupe_from_string(const std::string& name) {
  if (name == "raw") return DedupeMode::Raw;
  if (name == "affine_orbit") return DedupeMode::AffineOrbit;
  if (name == "by_lpolynomial") return DedupeMode::ByLPolynomial;
  fail("ParseError", "unknown dedupe mode: " + name);
}

std::vector<FieldEntry> enumerate_fields(const EnumerationScope& scope,
                                         int threads) {
  long long p = 0;
  int e = 0;
  factor_prime_power(scope.q, p, e);
  if (p == 2)
    fail("EvenCharacteristic", "hyperelliptic enumeration needs odd q");
  if (scope.genus_min < 0)
    fail("DegreeOutOfRange", "genus_min must be nonnegative");
  if (scope.genus_max > kGenusGuard)
    fail("ParameterOutOfRange",
         "genus_max exceeds the enumeration guard of " +
             std::to_string(kGenusGuard));
  if (scope.genus_min > scope.genus_max) return {};
  if (raw_count(scope.q, scope.genus_min, scope.genus_max,
                "enumerate_fields") > scope.budget)
    fail("BudgetExceeded",
         "scope enumerates more curves than the budget of " +
             std::to_string(scope.budget));

  FieldRef field = FieldSpec::make(p, e);
  std::vector<FieldEntry> all;
  for (int g = scope.genus_min; g <= scope.genus_max; ++g) {
    std::vector<FieldEntry> part =
        enumerate_genus(field, g, scope.dedupe, threads);
    for (auto& ent : part) all.push_back(std::move(ent));
  }
  return all;
}

NorthcottReport compute_S(long long q, Cplx s, double B,
                          EnumerationScope scope, int threads,
                          bool plain_central_value) {
  if (!(B > 0)) fail("ParameterOutOfRange", "compute_S needs B > 0");
  scope.q = q;
  RegionVerdict verdict = classify_point(q, s);

  NorthcottReport report;
  report.scope_caveat =
      "only odd-degree hyperelliptic models plus the genus-0 field are "
      "enumerated; the true S may contain non-hyperelliptic fields of "
      "genus >= 3";

  bool capped_fully = false;
  if (verdict.kind == RegionKind::Northcott) {
    int cap = genus_cap(q, s, B);
    report.has_genus_cap = true;
    report.genus_cap_used = cap;
    scope.genus_min = 0;
    int target = std::min(cap, kGenusGuard);
    while (target >= 0 &&
           raw_count(q, 0, target, "compute_S") > scope.budget)
      --target;
    scope.genus_max = target;
    if (target == cap) {
      capped_fully = true;
    } else if (target < cap && cap <= kGenusGuard) {
      report.scope_caveat +=
          "; budget stopped the sweep at genus " + std::to_string(target) +
          " short of the cap " + std::to_string(cap);
    } else {
      report.scope_caveat += "; the genus cap " + std::to_string(cap) +
                             " exceeds the genus-" +
                             std::to_string(kGenusGuard) +
                             " enumeration guard";
    }
  }

  bool use_plain = plain_central_value && s == Cplx(0.5, 0.0);
  std::vector<FieldEntry> fields = enumerate_fields(scope, threads);
  report.enumerated = static_cast<long long>(fields.size());
  for (const FieldEntry& f : fields) {
    SpecialValue sv = zeta_special_value(f.L, s);
    double size = std::abs(sv.leading);
    if (use_plain) size = (sv.order > 0) ? 0.0 : std::abs(zeta_eval(f.L, s));
    if (size <= B) {
      MemberRow row;
      row.D = f.D;
      row.genus = f.genus;
      row.h = class_number(f.L);
      row.order = sv.order;
      row.abs_leading = size;
      report.members.push_back(std::move(row));
    }
  }
  report.complete_within_scope = capped_fully;
  return report;
}

CentralZeroReport central_zero_search(long long q, int max_deg,
                                      long long budget, int threads) {
  long long p = 0;
  int e = 0;
  factor_prime_power(q, p, e);
  if (q % 4 != 1)
    fail("WrongCongruence", "central zero search requires q = 1 mod 4");
  if (max_deg < 1) fail("DegreeOutOfRange", "max_deg must be at least 1");
  if (max_deg > 2 * kGenusGuard + 1)
    fail("ParameterOutOfRange",
         "max_deg exceeds the genus-" + std::to_string(kGenusGuard) +
             " enumeration guard");
  long long total = 0;
  for (int n = 1; n <= max_deg; n += 2)
    total += ipow_checked(q, n, "central_zero_search");
  if (total > budget)
    fail("BudgetExceeded", "search space of " + std::to_string(total) +
                               " curves exceeds budget " +
                               std::to_string(budget));

  FieldRef field = FieldSpec::make(p, e);
  double u_abs = 1.0 / std::sqrt(static_cast<double>(q));
  CentralZeroReport report;
  report.max_deg = max_deg;

  for (int n = 1; n <= max_deg; n += 2) {
    int g = (n - 1) / 2;
    long long count = ipow(q, n);
    IrreducibleTable table;
    if (g >= 1) table = irreducible_table(field, g);

    struct Part {
      std::vector<Witness> hits;
      long long searched = 0;
    };
    auto blocks = run_blocks<Part>(
        count, 512, threads,
        [&](long long lo, long long hi) {
          Part part;
          for (long long N = lo; N < hi; ++N) {
            Poly D = monic_by_index(field, n, N);
            if (!is_squarefree(D)) continue;
            part.searched += 1;
            if (g == 0) continue;  // L = 1 never vanishes
            PrimeCounts counts = prime_counts_via_splitting(
                CurveModel::make(field, D), g, table);
            LPolynomial L = lpoly_from_prime_counts(counts, q, g);
            if (!central_value_is_zero(L)) continue;
            Cplx v = lpoly_eval(L, Cplx(u_abs, 0));
            if (!(std::abs(v) < 1e-12))
              fail("InternalCheck",
                   "exact central zero fails the numeric recheck for D = " +
                       D.str());
            Witness w;
            w.D = D;
            w.value = v;
            w.exact_zero = true;
            w.property = WitnessProperty::CentralZero;
            part.hits.push_back(std::move(w));
          }
          return part;
        });
    for (auto& b : blocks) {
      report.searched += b.searched;
      for (auto& w : b.hits) report.witnesses.push_back(std::move(w));
    }
  }

  if (report.witnesses.empty()) {
    report.verified_empty = true;
    report.certificate =
        "all " + std::to_string(report.searched) +
        " squarefree monic D of odd degree <= " + std::to_string(max_deg) +
        " over F_" + std::to_string(q) +
        " checked; none has L(q^(-1/2)) = 0";
  }
  return report;
}

}  // namespace ffzeta

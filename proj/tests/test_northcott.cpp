#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "ffzeta/northcott.hpp"
#include "ffzeta/sieve.hpp"
#include "ffzeta/zetafn.hpp"

using namespace ffzeta;

namespace {

FieldRef F5() { return FieldSpec::make(5, 1); }

bool near(double a, double b, double rel) {
  return std::abs(a - b) <= rel * (1 + std::max(std::abs(a), std::abs(b)));
}

std::string code_of(const std::function<void()>& fn) {
  try {
    fn();
    return "no error";
  } catch (const Error& e) {
    return e.code();
  }
}

EnumerationScope scope_of(long long q, int gmin, int gmax, DedupeMode mode) {
  EnumerationScope s;
  s.q = q;
  s.genus_min = gmin;
  s.genus_max = gmax;
  s.dedupe = mode;
  return s;
}

std::set<long long> orbit_indices(const Poly& D) {
  FieldRef F = D.field();
  std::set<long long> out;
  for (const FieldElement& a : fe_enumerate(F)) {
    if (a.is_zero() || fe_is_square(a) <= 0) continue;
    for (const FieldElement& b : fe_enumerate(F)) {
      Poly sub = Poly::from_ranks(F, {b.rank, a.rank});
      out.insert(poly_compose(D, sub).monic().monic_index());
    }
  }
  return out;
}

}  // namespace

TEST_CASE("field enumeration: counts, dedupe, determinism") {
  auto raw1 = enumerate_fields(scope_of(5, 1, 1, DedupeMode::Raw));
  CHECK(raw1.size() == 100);

  auto raw0 = enumerate_fields(scope_of(5, 0, 0, DedupeMode::Raw));
  CHECK(raw0.size() == 5);
  for (const FieldEntry& e : raw0) {
    CHECK(e.genus == 0);
    CHECK(e.L.c == std::vector<long long>{1});
  }

  // affine orbits partition H_3 and preserve L exactly
  auto orb = enumerate_fields(scope_of(5, 1, 1, DedupeMode::AffineOrbit));
  CHECK(orb.size() >= 10);
  CHECK(orb.size() < 100);
  {
    std::map<long long, std::vector<long long>> l_by_index;
    for (const FieldEntry& e : raw1) l_by_index[e.D.monic_index()] = e.L.c;
    std::set<long long> covered;
    for (const FieldEntry& e : orb) {
      std::set<long long> members = orbit_indices(e.D);
      CHECK(members.count(e.D.monic_index()) == 1);
      CHECK(e.D.monic_index() == *members.begin());  // index-minimal rep
      for (long long idx : members) {
        CHECK(covered.insert(idx).second);  // orbits are disjoint
        CHECK(l_by_index.at(idx) == e.L.c);  // L constant on the orbit
      }
    }
    CHECK(covered.size() == 100);
  }

  auto bylp = enumerate_fields(scope_of(5, 1, 1, DedupeMode::ByLPolynomial));
  {
    std::set<std::vector<long long>> distinct;
    for (const FieldEntry& e : raw1) distinct.insert(e.L.c);
    CHECK(bylp.size() == distinct.size());
    CHECK(bylp.size() <= orb.size());
  }

  // deterministic canonical order, independent of thread count
  auto two = enumerate_fields(scope_of(5, 0, 2, DedupeMode::Raw), 1);
  auto two4 = enumerate_fields(scope_of(5, 0, 2, DedupeMode::Raw), 4);
  REQUIRE(two.size() == two4.size());
  for (size_t i = 0; i < two.size(); ++i) {
    CHECK(two[i].D.monic_index() == two4[i].D.monic_index());
    CHECK(two[i].genus == two4[i].genus);
    CHECK(two[i].L.c == two4[i].L.c);
  }
  for (size_t i = 1; i < two.size(); ++i)
    CHECK(two[i - 1].genus <= two[i].genus);

  {
    EnumerationScope tight = scope_of(5, 0, 2, DedupeMode::Raw);
    tight.budget = 1000;
    CHECK(code_of([&] { enumerate_fields(tight); }) == "BudgetExceeded");
  }
  CHECK(code_of([] {
          enumerate_fields(scope_of(5, 0, 9, DedupeMode::Raw));
        }) == "ParameterOutOfRange");
  CHECK(code_of([] {
          enumerate_fields(scope_of(4, 0, 1, DedupeMode::Raw));
        }) == "EvenCharacteristic");
  CHECK(code_of([] {
          enumerate_fields(scope_of(12, 0, 1, DedupeMode::Raw));
        }) == "InvalidPrimePower");

  CHECK(dedupe_from_string("affine_orbit") == DedupeMode::AffineOrbit);
  CHECK(dedupe_name(DedupeMode::ByLPolynomial) == "by_lpolynomial");
  CHECK(code_of([] { dedupe_from_string("fancy"); }) == "ParseError");
}

TEST_CASE("compute_S: certified Northcott sweeps") {
  // q = 9, s = 0: only the genus-0 field slips under B = 0.1
  NorthcottReport r9 =
      compute_S(9, Cplx(0, 0), 0.1, scope_of(9, 0, 2, DedupeMode::AffineOrbit));
  CHECK(r9.has_genus_cap);
  CHECK(r9.genus_cap_used == 0);
  CHECK(r9.complete_within_scope);
  CHECK(!r9.scope_caveat.empty());
  REQUIRE(r9.members.size() == 1);
  CHECK(r9.members[0].genus == 0);
  CHECK(r9.members[0].order == -1);  // simple pole at s = 0
  CHECK(near(r9.members[0].abs_leading, 1.0 / (8.0 * std::log(9.0)), 1e-12));

  // q = 5, s = -2, B = 100: cap 1, every genus-1 field and the rational
  // field are members
  NorthcottReport r5 =
      compute_S(5, Cplx(-2, 0), 100.0, scope_of(5, 0, 0, DedupeMode::Raw));
  CHECK(r5.has_genus_cap);
  CHECK(r5.genus_cap_used == 1);
  CHECK(r5.complete_within_scope);
  CHECK(r5.enumerated == 105);
  CHECK(r5.members.size() == 105);
  for (const MemberRow& m : r5.members)
    if (m.genus == 1) {
      CHECK(m.abs_leading > 1.0);
      CHECK(m.abs_leading < 1.1);
    }

  // tight budget: the sweep stops short of the cap and says so
  {
    EnumerationScope tight = scope_of(5, 0, 0, DedupeMode::Raw);
    tight.budget = 100;
    NorthcottReport part = compute_S(5, Cplx(-2, 0), 100.0, tight);
    CHECK(!part.complete_within_scope);
    CHECK(part.genus_cap_used == 1);
    CHECK(part.members.size() == 5);
    CHECK(part.scope_caveat.find("budget") != std::string::npos);
  }

  CHECK(code_of([] {
          compute_S(5, Cplx(1, 0), 0.0, scope_of(5, 0, 1, DedupeMode::Raw));
        }) == "ParameterOutOfRange");
}

TEST_CASE("compute_S: non-Northcott witnesses and idempotence") {
  // sandwich lemma floor: nothing reaches B = 1e-6 at s = 2
  NorthcottReport empty =
      compute_S(5, Cplx(2, 0), 1e-6, scope_of(5, 0, 1, DedupeMode::Raw));
  CHECK(!empty.has_genus_cap);
  CHECK(!empty.complete_within_scope);
  CHECK(empty.enumerated == 105);
  CHECK(empty.members.empty());

  // s = 1: member count keeps growing with the genus range
  std::map<int, long long> by_genus;
  NorthcottReport pole =
      compute_S(5, Cplx(1, 0), 1.0, scope_of(5, 1, 3, DedupeMode::Raw), 4);
  for (const MemberRow& m : pole.members) by_genus[m.genus] += 1;
  CHECK(by_genus[1] > 0);
  CHECK(by_genus[2] > 0);
  CHECK(by_genus[3] > 0);

  // pole data: order -1 and leading h q^-g / ((1 - 1/q) log q)
  const MemberRow& m0 = pole.members.front();
  CHECK(m0.order == -1);
  CHECK(near(m0.abs_leading,
             m0.h * std::pow(5.0, -m0.genus) / ((1.0 - 0.2) * std::log(5.0)),
             1e-12));

  // recomputing every member from its D alone reproduces the row
  FieldRef F = F5();
  IrreducibleTable table = irreducible_table(F, 3);
  for (size_t i = 0; i < pole.members.size(); i += 97) {
    const MemberRow& m = pole.members[i];
    PrimeCounts counts = prime_counts_via_splitting(
        CurveModel::make(F, m.D), m.genus, table);
    LPolynomial L = lpoly_from_prime_counts(counts, 5, m.genus);
    SpecialValue sv = zeta_special_value(L, Cplx(1, 0));
    CHECK(std::abs(sv.leading) == m.abs_leading);
    CHECK(sv.order == m.order);
    CHECK(class_number(L) == m.h);
  }

  // thread count changes nothing
  NorthcottReport a =
      compute_S(5, Cplx(1, 0), 1.0, scope_of(5, 1, 2, DedupeMode::Raw), 1);
  NorthcottReport b =
      compute_S(5, Cplx(1, 0), 1.0, scope_of(5, 1, 2, DedupeMode::Raw), 4);
  REQUIRE(a.members.size() == b.members.size());
  for (size_t i = 0; i < a.members.size(); ++i) {
    CHECK(a.members[i].D.monic_index() == b.members[i].D.monic_index());
    CHECK(a.members[i].abs_leading == b.members[i].abs_leading);
  }
}

TEST_CASE("central zero search") {
  CentralZeroReport deg3 = central_zero_search(5, 3);
  CHECK(deg3.verified_empty);
  CHECK(deg3.witnesses.empty());
  CHECK(deg3.searched == 105);
  CHECK(deg3.certificate.find("105") != std::string::npos);

  CentralZeroReport deg5 = central_zero_search(5, 5, 100000000, 4);
  CHECK(deg5.searched == 2605);
  CHECK(deg5.witnesses.size() >= deg3.witnesses.size());
  FieldRef F = F5();
  IrreducibleTable table = irreducible_table(F, 2);
  for (const Witness& w : deg5.witnesses) {
    CHECK(w.exact_zero);
    CHECK(w.property == WitnessProperty::CentralZero);
    REQUIRE(is_squarefree(w.D));
    int g = (w.D.degree() - 1) / 2;
    PrimeCounts counts =
        prime_counts_via_splitting(CurveModel::make(F, w.D), g, table);
    LPolynomial L = lpoly_from_prime_counts(counts, 5, g);
    CHECK(central_value_is_zero(L));
    CHECK(std::abs(lpoly_eval(L, Cplx(1.0 / std::sqrt(5.0), 0))) < 1e-12);
  }
  if (deg5.witnesses.empty()) {
    CHECK(deg5.verified_empty);
    CHECK(!deg5.certificate.empty());
  } else {
    CHECK(!deg5.verified_empty);
  }

  // an exact-zero L is recognized by construction: (5u^2 - 1)^2
  LPolynomial crafted;
  crafted.q = 5;
  crafted.genus = 2;
  crafted.c = {1, 0, -10, 0, 25};
  CHECK(central_value_is_zero(crafted));
  CHECK(central_zero_multiplicity(crafted) == 2);
  LPolynomial plain;
  plain.q = 5;
  plain.genus = 1;
  plain.c = {1, -2, 5};
  CHECK(!central_value_is_zero(plain));

  // membership at s = 1/2 with the plain-value convention matches the
  // witness list exactly: only exact zeros can sit below B = 1e-30
  NorthcottReport plain_members =
      compute_S(5, Cplx(0.5, 0), 1e-30, scope_of(5, 0, 2, DedupeMode::Raw), 4,
                true);
  NorthcottReport star_members =
      compute_S(5, Cplx(0.5, 0), 1e-30, scope_of(5, 0, 2, DedupeMode::Raw), 4);
  std::set<long long> got, want;
  for (const MemberRow& m : plain_members.members)
    got.insert(m.D.monic_index());
  for (const Witness& w : deg5.witnesses) want.insert(w.D.monic_index());
  CHECK(got == want);
  CHECK(star_members.members.empty());

  // both conventions agree away from zeros
  NorthcottReport pv =
      compute_S(5, Cplx(0.5, 0), 2.0, scope_of(5, 0, 1, DedupeMode::Raw), 1,
                true);
  NorthcottReport sv =
      compute_S(5, Cplx(0.5, 0), 2.0, scope_of(5, 0, 1, DedupeMode::Raw));
  CHECK(pv.members.size() == sv.members.size());

  CentralZeroReport one = central_zero_search(13, 1);
  CHECK(one.verified_empty);
  CHECK(one.searched == 13);

  CHECK(code_of([] { central_zero_search(7, 3); }) == "WrongCongruence");
  CHECK(code_of([] { central_zero_search(6, 3); }) == "InvalidPrimePower");
  CHECK(code_of([] { central_zero_search(5, 5, 1000); }) == "BudgetExceeded");
  CHECK(code_of([] { central_zero_search(5, 0); }) == "DegreeOutOfRange");
  CHECK(code_of([] { central_zero_search(5, 19); }) == "ParameterOutOfRange");

  CentralZeroReport t1 = central_zero_search(5, 5, 100000000, 1);
  CHECK(t1.witnesses.size() == deg5.witnesses.size());
  for (size_t i = 0; i < t1.witnesses.size(); ++i)
    CHECK(t1.witnesses[i].D.monic_index() ==
          deg5.witnesses[i].D.monic_index());
}

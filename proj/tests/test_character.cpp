#include "doctest.h"
#include "ffzeta/character.hpp"
#include "ffzeta/sieve.hpp"

using namespace ffzeta;

namespace {
FieldRef F5() { return FieldSpec::make(5, 1); }
}  // namespace

TEST_CASE("quadratic character basic values over F_5") {
  FieldRef F = F5();
  Poly D = Poly::parse(F, "T^3+T");

  // (T | T+1): D(T)=T at the root -1, i.e. -1 = 4 = 2^2 is a square mod 5.
  CHECK(quadratic_character(Poly::parse(F, "T"), Poly::parse(F, "T+1")) == 1);
  // (T^3+T | T+4): at root 1, D(1)=2, a non-square mod 5.
  CHECK(quadratic_character(D, Poly::parse(F, "T+4")) == -1);
  // ramified: P divides D
  CHECK(quadratic_character(D, Poly::parse(F, "T")) == 0);
  CHECK(quadratic_character(D, Poly::parse(F, "T+2")) == 0);
  // modulus 1 gives the empty product
  CHECK(quadratic_character(D, Poly::parse(F, "1")) == 1);
}

TEST_CASE("character is multiplicative in the modulus") {
  FieldRef F = F5();
  Poly D = Poly::parse(F, "T^3+T");
  std::vector<Poly> mods = {
      Poly::parse(F, "T+1"), Poly::parse(F, "T+4"), Poly::parse(F, "T^2+2"),
      Poly::parse(F, "T^2+T+1")};
  for (const Poly& a : mods) {
    for (const Poly& b : mods) {
      CHECK(quadratic_character(D, a * b) ==
            quadratic_character(D, a) * quadratic_character(D, b));
    }
  }
}

TEST_CASE("character vanishes exactly on non-coprime moduli") {
  FieldRef F = F5();
  Poly D = Poly::parse(F, "T^3+T");
  for_each_monic(F, 2, [&](long long, const Poly& f) {
    bool coprime = poly_gcd(D, f).degree() == 0;
    CHECK((quadratic_character(D, f) != 0) == coprime);
  });
}

TEST_CASE("quadratic reciprocity for q = 1 mod 4") {
  // For q = 5 and distinct monic irreducibles P, Q: chi_P(Q) = chi_Q(P).
  FieldRef F = F5();
  std::vector<Poly> primes;
  for (int d = 1; d <= 3; ++d) {
    for (const Poly& P : enumerate_monic(F, d, MonicFilter::Irreducible)) {
      primes.push_back(P);
    }
  }
  REQUIRE(primes.size() == 5 + 10 + 40);
  // keep the quadratic-time sweep modest
  for (size_t i = 0; i < primes.size(); i += 3) {
    for (size_t j = i + 1; j < primes.size(); j += 5) {
      CHECK(quadratic_character(primes[j], primes[i]) ==
            quadratic_character(primes[i], primes[j]));
    }
  }
}

TEST_CASE("sieve character tables match Euler symbols") {
  FieldRef F = F5();
  MonicSieve sieve(F, 3);
  sieve.ensure_char_tables(3);
  Poly D = Poly::parse(F, "T^3+T");
  auto chiP = sieve.chi_of(D, 2);
  int idx = 0;
  for (int d = 1; d <= 2; ++d) {
    for (const Poly& P : enumerate_monic(F, d, MonicFilter::Irreducible)) {
      CHECK(static_cast<int>(chiP[idx]) == quadratic_character(D, P));
      ++idx;
    }
  }
  CHECK(idx == 15);

  // chi_monic over composite moduli agrees with the direct computation
  auto full = sieve.chi_of(D, 3);
  for (int d = 1; d <= 3; ++d) {
    for_each_monic(F, d, [&](long long N, const Poly& f) {
      CHECK(static_cast<int>(sieve.chi_monic(full, d, N)) ==
            quadratic_character(D, f));
    });
  }
}

TEST_CASE("character over an extension field") {
  FieldRef F9 = FieldSpec::make(3, 2);
  Poly D = Poly::parse(F9, "T^3+T");
  // count chi values over monic linears: each is 0 or +-1
  int zeros = 0;
  for (const Poly& P : enumerate_monic(F9, 1, MonicFilter::All)) {
    int v = quadratic_character(D, P);
    CHECK(v >= -1);
    CHECK(v <= 1);
    if (v == 0) ++zeros;
  }
  // D has three distinct roots in F_9 (0, and the square roots of -1)
  CHECK(zeros == 3);
}

TEST_CASE("character input validation") {
  FieldRef F = F5();
  Poly D = Poly::parse(F, "T^3+T");
  try {
    quadratic_character(D, Poly::parse(F, "2*T+1"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "NonMonic");
  }
  try {
    quadratic_character(D, Poly(F));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "ZeroPolynomial");
  }
  try {
    FieldRef F4 = FieldSpec::make(2, 2);
    quadratic_character(Poly::parse(F4, "T"), Poly::parse(F4, "T+1"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "EvenCharacteristic");
  }
  try {
    FieldRef F7 = FieldSpec::make(7, 1);
    quadratic_character(D, Poly::parse(F7, "T+1"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "FieldMismatch");
  }
}

#include "ffzeta/character.hpp"

#include "ffzeta/numutil.hpp"

namespace ffzeta {

int euler_symbol(const Poly& D, const Poly& P) {
  const FieldSpec& F = *P.field();
  if (F.p() == 2) fail("EvenCharacteristic", "quadratic character needs odd q");
  Poly r = poly_mod(D, P);
  if (r.is_zero()) return 0;
  uint128 exp = 1;
  for (int i = 0; i < P.degree(); ++i) exp *= static_cast<uint128>(F.q());
  exp = (exp - 1) / 2;
  Poly s = poly_powmod(r, exp, P);
  if (s.is_constant() && s.coeff(0) == F.one()) return 1;
  if (s.is_constant() && s.coeff(0) == F.neg_one()) return -1;
  fail("Overflow", "Euler criterion did not resolve; P is not irreducible");
}

int quadratic_character(const Poly& D, const Poly& f, uint64_t seed) {
  if (!f.field() || !D.field()) fail("FieldMismatch", "polynomial without a field");
  if (!f.field()->same(*D.field())) fail("FieldMismatch", "character arguments over distinct fields");
  if (f.field()->p() == 2) fail("EvenCharacteristic", "quadratic character needs odd q");
  if (f.is_zero()) fail("ZeroPolynomial", "character modulus is zero");
  if (!f.is_monic()) fail("NonMonic", "character modulus must be monic");
  if (f.is_constant()) return 1;
  Factorization fc = factor(f, seed);
  int acc = 1;
  for (const auto& [P, m] : fc.factors) {
    int s = euler_symbol(D, P);
    if (s == 0) return 0;
    if (s < 0 && (m % 2) != 0) acc = -acc;
  }
  return acc;
}

}  // namespace ffzeta

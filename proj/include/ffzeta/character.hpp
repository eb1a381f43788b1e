#pragma once

#include "ffzeta/factor.hpp"
#include "ffzeta/poly.hpp"

namespace ffzeta {

// Jacobi-style quadratic residue symbol (D | f) for monic nonzero f over
// odd-q fields: multiplicative in f, computed through the factorization of f
// with the Euler criterion per prime, D^((|P|-1)/2) mod P. Values -1, 0, +1;
// zero exactly when gcd(D, f) is nonconstant. (D | 1) = 1 by convention.
int quadratic_character(const Poly& D, const Poly& f, uint64_t seed = kDefaultFactorSeed);

// Euler criterion for a single monic irreducible P (not validated as such);
// exposed for the equivalence tests against the table-driven path.
int euler_symbol(const Poly& D, const Poly& P);

}  // namespace ffzeta

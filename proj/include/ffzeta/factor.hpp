#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ffzeta/poly.hpp"

namespace ffzeta {

inline constexpr uint64_t kDefaultFactorSeed = 0x00c0ffee5eedull;

struct Factorization {
  FieldRef field;
  uint64_t unit_rank = 0;  // leading coefficient of the input
  // monic irreducible factors with multiplicities, sorted by
  // (degree, coefficients from the top)
  std::vector<std::pair<Poly, int>> factors;

  Poly reconstruct() const;
};

// Complete factorization: squarefree split (with p-th-root descent in
// characteristic p), distinct-degree split, then Cantor–Zassenhaus
// equal-degree splitting driven by a fixed-seed generator, so results are
// deterministic for a given input and seed. ZeroPolynomial on 0.
Factorization factor(const Poly& f, uint64_t seed = kDefaultFactorSeed);

// deg P when f is a power of a single irreducible P (unit scaling ignored),
// 0 otherwise. ZeroPolynomial on 0.
long long von_mangoldt(const Poly& f, uint64_t seed = kDefaultFactorSeed);

// Number of monic divisors (the divisor function d_2). ZeroPolynomial on 0.
long long divisor_count(const Poly& f, uint64_t seed = kDefaultFactorSeed);

}  // namespace ffzeta

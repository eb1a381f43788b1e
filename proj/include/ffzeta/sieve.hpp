#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "ffzeta/factor.hpp"
#include "ffzeta/poly.hpp"

namespace ffzeta {

// Smallest-prime-factor sieve over all monic polynomials of degree <= max_deg,
// plus per-prime quadratic-residue tables. This is the accelerated counterpart
// of factor()/quadratic_character(); the two are equivalence-tested. Build it
// once, then share read-only across threads (char tables must be requested
// up front via ensure_char_tables).
class MonicSieve {
 public:
  MonicSieve(FieldRef field, int max_deg, long long budget = 100000000);

  const FieldRef& field() const { return field_; }
  int max_deg() const { return max_deg_; }

  int prime_count() const { return static_cast<int>(primes_.size()); }
  const Poly& prime(int id) const { return primes_[id]; }
  int prime_degree(int id) const { return prime_deg_[id]; }
  // ids of the primes of degree d, contiguous: [first, last)
  std::pair<int, int> primes_of_degree(int d) const;

  // factorization chain entry for the monic of (deg, N): the smallest prime
  // factor and the index of the cofactor (whose degree is deg - deg(spf));
  // spf < 0 only for the constant 1
  struct Entry {
    int32_t spf = -1;
    int64_t quot = 0;
  };
  const Entry& entry(int deg, long long N) const { return entries_[deg][N]; }

  bool squarefree_idx(int deg, long long N) const;
  // calls fn(prime_id, multiplicity) in non-decreasing prime order
  void factor_idx(int deg, long long N, const std::function<void(int, int)>& fn) const;
  Factorization factorization_idx(int deg, long long N) const;

  // residue index: poly r with deg r < d maps to sum rank(r_i) q^i
  long long residue_index(const Poly& r, int d) const;

  // quadratic-residue tables for all primes of degree <= d (odd q only)
  void ensure_char_tables(int d);
  // chi(residue) for prime id; valid after ensure_char_tables(deg(P))
  const int8_t* char_table(int id) const { return char_tables_[id].data(); }

  // chi_D(P) for every prime id with deg P <= max_prime_deg (0 beyond)
  std::vector<int8_t> chi_of(const Poly& D, int max_prime_deg) const;
  // chi_D(f) for the monic f of (deg, N), given the per-prime vector
  int chi_monic(const std::vector<int8_t>& chiP, int deg, long long N) const;

 private:
  FieldRef field_;
  int max_deg_;
  std::vector<Poly> primes_;
  std::vector<int> prime_deg_;
  std::vector<int> deg_first_;  // primes_of_degree support
  std::vector<std::vector<Entry>> entries_;
  std::vector<std::vector<int8_t>> char_tables_;
  int char_tables_built_deg_ = 0;
};

// Table of monic irreducibles by degree, canonical order; the counts are
// verified against the Mobius closed form during construction.
struct IrreducibleTable {
  FieldRef field;
  int max_deg = 0;
  std::vector<std::vector<Poly>> by_degree;  // [0] unused
};

IrreducibleTable irreducible_table(const FieldRef& field, int max_deg,
                                   long long budget = 100000000);

}  // namespace ffzeta

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ffzeta/errors.hpp"

namespace ffzeta {

class FieldSpec;
using FieldRef = std::shared_ptr<const FieldSpec>;

// F_q with q = p^e, explicit monic irreducible modulus over F_p (the modulus
// is T itself when e = 1). Elements travel as packed ranks: the element with
// power-basis coordinates (a_0, ..., a_{e-1}) has
//
//   rank = a_0 * p^(e-1) + a_1 * p^(e-2) + ... + a_{e-1},
//
// so ascending rank is lexicographic coordinate order with 0 first, and for
// prime fields the rank is the residue itself. All arithmetic runs on ranks
// through the owning FieldSpec; no heap traffic per operation.
class FieldSpec {
 public:
  // Construction is canonicalized: equal (p, e, modulus) yields the same
  // shared instance, so pointer equality decides field identity.
  static FieldRef make(long long p, int e);
  static FieldRef make(long long p, int e, const std::vector<long long>& modulus);
  // Accepts "5", "25", "3^2", optionally prefixed "q=". An explicit modulus
  // literal (over F_p, in polynomial syntax) may be supplied by the caller
  // after parsing; see field_from_q below.
  static FieldRef parse_q(const std::string& literal);

  long long p() const { return p_; }
  int e() const { return e_; }
  long long q() const { return q_; }
  // Length e+1, monic, coefficients in [0, p), constant term first.
  const std::vector<long long>& modulus() const { return modulus_; }

  uint64_t zero() const { return 0; }
  uint64_t one() const { return one_; }
  uint64_t neg_one() const { return neg_one_; }

  uint64_t add(uint64_t a, uint64_t b) const;
  uint64_t sub(uint64_t a, uint64_t b) const;
  uint64_t neg(uint64_t a) const;
  uint64_t mul(uint64_t a, uint64_t b) const;
  uint64_t inv(uint64_t a) const;                 // DivisionByZero on 0
  uint64_t div(uint64_t a, uint64_t b) const;
  uint64_t pow(uint64_t a, unsigned long long n) const;  // 0^0 = 1

  // +1 nonzero square, -1 nonzero non-square, 0 for the zero element.
  // Requires odd q (EvenCharacteristic otherwise).
  int square_class(uint64_t a) const;

  // p-th root, always exists and is unique in characteristic p.
  uint64_t pth_root(uint64_t a) const;

  uint64_t from_int(long long v) const;  // constant embedding, reduced mod p
  std::vector<long long> coords(uint64_t rank) const;
  uint64_t from_coords(const std::vector<long long>& c) const;

  std::string format_element(uint64_t rank) const;  // "3" or "[1,2]"
  std::string q_literal() const;                    // "5" or "3^2"
  std::string modulus_literal() const;              // "T^2+1"

  bool same(const FieldSpec& o) const {
    return this == &o || (p_ == o.p_ && e_ == o.e_ && modulus_ == o.modulus_);
  }

 private:
  FieldSpec() = default;

  long long p_ = 0;
  int e_ = 1;
  long long q_ = 0;
  std::vector<long long> modulus_;
  std::vector<long long> powp_;      // p^0 .. p^e
  std::vector<long long> red_rows_;  // (e-1) x e: T^(e+k) mod modulus over F_p
  uint64_t one_ = 0;
  uint64_t neg_one_ = 0;

  void decode(uint64_t rank, long long* a) const;
  uint64_t encode(const long long* a) const;
  uint64_t encode_one();
  uint64_t mul_ext(uint64_t a, uint64_t b) const;
  uint64_t inv_ext(uint64_t a) const;

  friend class FieldRegistry;
};

// Value-level element for API edges and containers; hot paths use ranks.
struct FieldElement {
  uint64_t rank = 0;
  FieldRef field;

  FieldElement() = default;
  FieldElement(uint64_t r, FieldRef f) : rank(r), field(std::move(f)) {}

  bool is_zero() const { return rank == 0; }
  std::string str() const { return field->format_element(rank); }
};

// Checked mixing: throws FieldMismatch when the two elements belong to
// distinct fields.
const FieldSpec& common_field(const FieldElement& a, const FieldElement& b);

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_mul(const FieldElement& a, const FieldElement& b);
FieldElement fe_div(const FieldElement& a, const FieldElement& b);
FieldElement fe_neg(const FieldElement& a);
FieldElement fe_inv(const FieldElement& a);
FieldElement fe_pow(const FieldElement& a, unsigned long long n);
int fe_is_square(const FieldElement& a);

// All q elements in canonical order (rank 0, 1, ..., q-1).
std::vector<FieldElement> fe_enumerate(const FieldRef& f);

// Builds the field from a q literal plus optional modulus literal over F_p
// ("T^2+1"); the default modulus is the first monic irreducible of degree e
// in the canonical enumeration order.
FieldRef field_from_q(const std::string& q_literal, const std::string& modulus_literal = "");

}  // namespace ffzeta

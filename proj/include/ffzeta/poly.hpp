#pragma once

#include <climits>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ffzeta/ffield.hpp"
#include "ffzeta/numutil.hpp"

namespace ffzeta {

// Dense univariate polynomial over F_q. Coefficients are packed element
// ranks, constant term first, with no trailing zeros; the zero polynomial
// has an empty coefficient vector and degree kNegInf.
class Poly {
 public:
  static constexpr int kNegInf = INT_MIN;

  Poly() = default;
  explicit Poly(FieldRef f) : field_(std::move(f)) {}

  static Poly from_ranks(FieldRef f, std::vector<uint64_t> ranks);
  // Prime-field convenience; values are reduced mod p. In extension fields
  // each entry is embedded as a constant.
  static Poly from_ints(const FieldRef& f, const std::vector<long long>& ints);
  static Poly constant(const FieldRef& f, uint64_t rank);
  static Poly monomial(const FieldRef& f, int deg, uint64_t coeff_rank);
  static Poly parse(const FieldRef& f, const std::string& literal);

  const FieldRef& field() const { return field_; }
  const std::vector<uint64_t>& ranks() const { return c_; }
  int degree() const { return c_.empty() ? kNegInf : static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == field_->one(); }
  uint64_t coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : 0;
  }
  uint64_t leading() const { return c_.empty() ? 0 : c_.back(); }

  uint64_t eval(uint64_t t) const;  // Horner

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative() const;
  Poly monic() const;  // ZeroPolynomial on 0
  Poly shift(int k) const;  // multiply by T^k

  // (degree, coefficients from the top) order; total on a fixed field.
  bool less_than(const Poly& o) const;

  // Index of a monic polynomial among all monics of its degree:
  // N = sum rank(a_i) q^i over the non-leading coefficients, so ascending N
  // is lexicographic with the constant term last in the ordering key.
  long long monic_index() const;

  std::string str() const;

 private:
  FieldRef field_;
  std::vector<uint64_t> c_;

  void normalize();
};

// quotient, remainder; DivisionByZero when b = 0
std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& b);
Poly poly_div_exact(const Poly& a, const Poly& b);  // throws if remainder != 0
Poly poly_gcd(const Poly& a, const Poly& b);        // monic (or 0)
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m);
Poly poly_powmod(const Poly& a, uint128 exp, const Poly& m);
// substitute g into f: f(g(T))
Poly poly_compose(const Poly& f, const Poly& g);

bool is_squarefree(const Poly& f);  // ZeroPolynomial on 0
bool is_irreducible(const Poly& f);

// Monic polynomial of degree n with index N (see Poly::monic_index).
Poly monic_by_index(const FieldRef& f, int n, long long N);

enum class MonicFilter { All, Squarefree, Irreducible };

// Enumerates monic degree-n polynomials in canonical order. Guarded by the
// budget (BudgetExceeded when q^n exceeds it).
std::vector<Poly> enumerate_monic(const FieldRef& f, int n, MonicFilter filter,
                                  long long budget = 100000000);
void for_each_monic(const FieldRef& f, int n,
                    const std::function<void(long long, const Poly&)>& fn,
                    long long budget = 100000000);

// Number of monic irreducibles of degree d over F_q: (1/d) sum mu(e) q^(d/e).
long long irreducible_count(long long q, int d);
// Number of squarefree monics of degree n: q^n (1 - 1/q) for n >= 2, else q^n.
long long squarefree_count(long long q, int n);

int mobius_int(int n);

}  // namespace ffzeta

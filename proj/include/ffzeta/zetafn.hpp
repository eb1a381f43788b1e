#pragma once

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "ffzeta/poly.hpp"

namespace ffzeta {

using Cplx = std::complex<double>;

// Imaginary quadratic model y^2 = D(T): D monic, squarefree, odd degree
// 2g+1, odd characteristic. The place at infinity is ramified.
struct CurveModel {
  FieldRef field;
  Poly D;
  int genus = 0;

  // Validates the model; throws EvenCharacteristic, NonMonic,
  // ZeroPolynomial, EvenDegree, or NonSquarefree.
  static CurveModel make(FieldRef field, Poly D);
};

// L(u) with exact integer coefficients c[0..2g], c[0] = 1. The zeta function
// of the field is L(q^-s) / ((1 - q^-s)(1 - q^(1-s))).
struct LPolynomial {
  long long q = 0;
  int genus = 0;
  std::vector<long long> c;

  long long coeff(int n) const {
    return (n >= 0 && n < static_cast<int>(c.size())) ? c[n] : 0;
  }
};

// c[0] = 1 and the coefficient symmetry c[2g-n] = q^(g-n) c[n] hold exactly.
bool lpoly_basic_ok(const LPolynomial& L);

struct WeilReport {
  bool funceq = false;
  bool rh = false;
  double max_root_deviation = 0.0;  // max | |root| * sqrt(q) - 1 |
};

struct SpecialValue {
  Cplx at;
  int order = 0;   // negative = pole
  Cplx leading;    // coefficient of (t - s)^order in the expansion at s
  bool exact_order = true;  // false when the order came from root clustering
};

struct PrimeCounts {
  long long q = 0;
  int max_deg = 0;
  std::map<int, long long> a;  // degree -> number of places of that degree

  long long at(int d) const {
    auto it = a.find(d);
    return it == a.end() ? 0 : it->second;
  }
};

class MonicSieve;
struct IrreducibleTable;

// Route 1: coefficient c_n as the full character sum over monic f of degree
// n, for n <= 2g; the degree 2g+1 sum is checked to vanish. Budget caps the
// number of enumerated polynomials. The second form reuses a prebuilt sieve
// (with char tables to degree 2g+1) across many curves of one field.
LPolynomial lpoly_from_charsum(const CurveModel& curve,
                               long long budget = 100000000);
LPolynomial lpoly_from_charsum(const CurveModel& curve, const MonicSieve& sieve);

// Route 2a: place counts from the splitting of monic irreducibles under the
// quadratic character (split / inert / ramified), plus the ramified infinite
// place in degree 1.
PrimeCounts prime_counts_via_splitting(const CurveModel& curve, int max_deg,
                                       long long budget = 100000000);
PrimeCounts prime_counts_via_splitting(const CurveModel& curve, int max_deg,
                                       const IrreducibleTable& table);

// Route 2b: Newton's identities on the power sums q^l + 1 - sum_{d|l} d a_d
// for l <= g; the upper half of L comes from the coefficient symmetry.
LPolynomial lpoly_from_prime_counts(const PrimeCounts& counts, long long q,
                                    int genus);

// Shared state for direct point counts over one (base field, n): the
// extension, the base-field embedding, and the square table.
struct ExtContext {
  FieldRef base;
  int n = 1;
  FieldRef ext;
  std::vector<uint64_t> emb;     // base rank -> extension rank
  std::vector<uint8_t> sqcount;  // v -> #{y : y^2 = v}
};
ExtContext make_ext_context(const FieldRef& field, int n,
                            long long budget = 100000000);

// Route 3: #{(t,y) in F_{q^n}^2 : y^2 = D(t)} + 1, counted directly in the
// degree-n extension.
long long point_count_direct(const CurveModel& curve, int n,
                             long long budget = 100000000);
long long point_count_direct(const CurveModel& curve, const ExtContext& ctx);

// Place counts recovered from L alone (power sums, then Mobius inversion).
PrimeCounts prime_counts_from_lpoly(const LPolynomial& L, int max_deg);

// Point counts N_n = q^n + 1 - p_n from the power sums of L's inverse roots.
long long point_count_from_lpoly(const LPolynomial& L, int n);

long long class_number(const LPolynomial& L);  // L(1), checked positive

WeilReport check_weil_package(const LPolynomial& L);

// b_0..b_N, the number of effective divisors of each degree.
std::vector<long long> effective_divisor_counts(const LPolynomial& L, int N);

// Exact test for L(q^(-1/2)) = 0 via integer divisibility; multiplicity of
// the central root likewise.
bool central_value_is_zero(const LPolynomial& L);
int central_zero_multiplicity(const LPolynomial& L);
// Multiplicity of -q^(-1/2), needed at u_0 on the negative real axis.
int negative_central_multiplicity(const LPolynomial& L);

// True when q^-s lands on 1 or q^-1 (the zeta poles), up to 1e-12 in the
// structural test on sigma and tau.
bool zeta_is_pole(long long q, Cplx s);

Cplx zeta_eval(const LPolynomial& L, Cplx s);  // PoleAt on the two poles
Cplx xi_eval(const LPolynomial& L, Cplx s);    // q^((g-1)s) zeta(s)

SpecialValue zeta_special_value(const LPolynomial& L, Cplx s);

// All 2g roots of L in u, found numerically.
std::vector<Cplx> lpoly_roots(const LPolynomial& L);

double lpoly_eval_abs(const LPolynomial& L, Cplx u);
Cplx lpoly_eval(const LPolynomial& L, Cplx u);

}  // namespace ffzeta

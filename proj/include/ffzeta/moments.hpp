#pragma once

#include <complex>
#include <string>

#include "ffzeta/factor.hpp"
#include "ffzeta/poly.hpp"
#include "ffzeta/zetafn.hpp"

namespace ffzeta {

// Ordered shift pair {gamma_1, gamma_2}. The second-moment instances use
// gamma_2 = conj(gamma_1), in which case tau is real-valued.
struct ShiftSet {
  Cplx g1;
  Cplx g2;
};

// tau_C(f) = sum over monic factorizations f = f1 f2 of |f1|^-g1 |f2|^-g2.
// Multiplicative over prime powers; |tau| <= d_2(f) |f|^-min(Re g1, Re g2).
Cplx tau(const ShiftSet& C, const Poly& f);
Cplx tau(const ShiftSet& C, const Factorization& fac);

// The Euler product C_alpha over monic irreducibles of degree <= trunc_deg.
// Each per-prime factor is evaluated in a closed two-geometric-series form
// and as the even tau-series, which must agree to 1e-12; value is the
// truncated product, log_tail_bound a crude bound on the omitted log-tail.
struct CAlphaValue {
  double value = 0.0;
  double log_tail_bound = 0.0;
  std::string tail_note;
};
CAlphaValue c_alpha_euler_product(long long q, Cplx alpha, int trunc_deg);

// Four-subset main-term prediction for the shifted second moment at genus g:
// sum over subsets of {alpha1, alpha2} of q^(-2g sum) A_C(1) prod zeta_q
// factors, with A_C(1) truncated at prime degree trunc_deg.
Cplx predicted_shifted_moment(long long q, int g, Cplx alpha1, Cplx alpha2,
                              int trunc_deg);

struct MomentReport {
  long long q = 0;
  int g = 0;
  Cplx alpha;
  double empirical = 0.0;
  double predicted = 0.0;
  int truncation_deg = 0;
  std::string tail_flag;
  double ratio = 0.0;
};

// Mean of |L(1/2 + alpha, chi_D)|^2 over all D in H_{2g+1}, each L computed
// exactly by the splitting route. The sum runs over fixed index blocks
// combined by a pairwise tree, so the report is identical for every thread
// count. predicted is the truncated C_alpha.
MomentReport second_moment_exhaustive(long long q, int g, Cplx alpha,
                                      int threads = 1, int trunc_deg = 12,
                                      long long budget = 100000000);

// Both sides of the approximate functional equation for |L(1/2+alpha)|^2:
// lhs from the exact L-polynomial, rhs from the two character sums of length
// 2g and 2g-1. They agree to 1e-9 (enforced).
struct AfePair {
  double lhs = 0.0;
  double rhs = 0.0;
};
AfePair approx_funceq_eval(const CurveModel& curve, Cplx alpha,
                           long long budget = 100000000);

// |sum over monic B of degree n of chi_f(B)| against the binomial bound
// binom(deg f - 1, n) q^(n/2), for a nontrivial character mod f and
// n < deg f.
struct CharsumBound {
  double lhs = 0.0;
  double rhs = 0.0;
  bool ok = false;
};
CharsumBound charsum_bound_check(const Poly& f, int n);

// Ensemble average of chi_D(f^2) over H_{2g+1} against the main term
// prod_{P | f} (1 + 1/|P|)^-1; ok when the gap is within 5 q^(-2g).
struct SquareAverage {
  double empirical = 0.0;
  double main_term = 0.0;
  double abs_err = 0.0;
  long long coprime_count = 0;
  long long total_count = 0;
  bool ok = false;
};
SquareAverage square_average_check(long long q, int g, const Poly& f,
                                   long long budget = 100000000);

}  // namespace ffzeta

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ffzeta/zetafn.hpp"

namespace ffzeta {

// Verdict kinds for the (q, s) classifier. NonNorthcottLargeB means
// S_{q,s,B} is infinite once B passes the reported threshold;
// NonNorthcottAllB means it is infinite for every positive B.
enum class RegionKind {
  Northcott,
  NonNorthcottLargeB,
  NonNorthcottAllB,
  CentralLineZetaVanishing,
  NoResult,
};

std::string region_kind_name(RegionKind kind);

struct RegionVerdict {
  RegionKind kind = RegionKind::NoResult;
  bool has_threshold = false;  // set exactly when kind is NonNorthcottLargeB
  double threshold_B = 0.0;
  std::string provenance;  // statement tag "a".."g", "gap", or "none"
  std::vector<std::string> assumptions;
  std::string note;
};

// A closed-form bound. When the bound itself fits in binary64, value holds
// it and log_scale is false; otherwise value holds its natural log and
// log_scale is true. log_base_q always carries log_q of the bound, and
// exact the reduced fraction when the formula is rational.
struct BoundReport {
  std::string name;
  double value = 0.0;
  bool log_scale = false;
  double log_base_q = 0.0;
  std::string exact;
  std::string note;
};

// 1/2 - log 2 / log q, the left edge of the uncovered vertical strip.
double northcott_sigma_cut(long long q);

// Threshold for the moment-based non-Northcott statement at Re(s) > 1/2:
// |1/((1-q^-s)(1-q^(1-s)))| sqrt(C_alpha) with alpha = s - 1/2, the Euler
// product truncated at prime degree trunc_deg.
double moment_threshold_B(long long q, Cplx s, int trunc_deg = 12);

RegionVerdict classify_point(long long q, Cplx s, int trunc_deg = 12);

// (max(0, sqrt(q)|u| - 1)^2g, (sqrt(q)|u| + 1)^2g), bracketing |L_K(u)|.
std::pair<double, double> hasse_envelope(long long q, int g, Cplx u);

// Largest possible genus of a field K with |zeta*_K(s)| <= B, valid for
// s = 0 with q > 4 and for Re(s) < 1/2 - log 2 / log q.
int genus_cap(long long q, Cplx s, double B);

// Count of genus-g degree-n function fields over F_q via Couveignes's
// parameter count, q^(Q (log n)^2 (g + n (1 + log_q n))). Q is not effective
// in the source and is user-supplied. n < 0 picks the gonality default:
// 2 for g = 1, 2g - 2 for g >= 2.
BoundReport couveignes_count_bound(long long q, int g, int n = -1,
                                   double Q = 1.0);

// Size bound q^(Q c_sigma (log B)^3 B) for S_{q,s,B} in the Northcott
// region, c_sigma = 1 / ((log q) log(q^(1/2-sigma) - 1)).
BoundReport size_bound_S(long long q, Cplx s, double B, double Q = 1.0);

// 1 / ((1 - q^-sigma)(1 - q^(1-sigma))^2) for sigma > 1: every quadratic
// field satisfies zeta_K(sigma) <= this, so S_{q,sigma,B} is infinite for
// B at or above it.
BoundReport right_threshold_B(long long q, double sigma);

// Genus-g isomorphism-class count bounds: Lipnowski-Tsimerman
// (2g)^g q^(g(g+1)/4) p^((33/4) g^2) with the o(1) exponent term dropped,
// and de Jong-Katz g^(c1 g) q^(c2 g) with user-supplied c1, c2.
std::vector<BoundReport> misc_count_bounds(long long q, int g, double c1 = 1.0,
                                           double c2 = 1.0);

// q^l / l + q^(l/3) + (2g / l)(q^(l/2) + q^(l/4)), an upper bound for the
// number of degree-l places.
double a_ell_upper(long long q, int g, int ell);

// Closed-form upper bound for zeta_K(sigma), sigma > 1:
// (exp(1/(q^(sigma-1/3)-1)) / ((1-q^(1-sigma)) (1-q^(1/2-sigma))^2g
//  (1-q^(1/4-sigma))^2g))^(q^sigma/(q^sigma-1)).
double zeta_sigma_upper(long long q, int g, double sigma);

}  // namespace ffzeta

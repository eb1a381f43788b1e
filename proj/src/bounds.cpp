#include "ffzeta/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ffzeta/errors.hpp"
#include "ffzeta/moments.hpp"
#include "ffzeta/numutil.hpp"

namespace ffzeta {

namespace {

void check_prime_power(long long q) {
  long long p = 0;
  int e = 0;
  factor_prime_power(q, p, e);
}

long long char_of(long long q) {
  long long p = 0;
  int e = 0;
  factor_prime_power(q, p, e);
  return p;
}

// value / log_scale / log_base_q bookkeeping from a natural-log bound
BoundReport from_log(std::string name, double ln_bound, std::string note,
                     long long q) {
  BoundReport r;
  r.name = std::move(name);
  r.note = std::move(note);
  r.log_base_q = ln_bound / std::log(static_cast<double>(q));
  if (ln_bound < 700.0) {
    r.value = std::exp(ln_bound);
    r.log_scale = false;
  } else {
    r.value = ln_bound;
    r.log_scale = true;
  }
  return r;
}

}  // namespace

std::string region_kind_name(RegionKind kind) {
  switch (kind) {
    case RegionKind::Northcott:
      return "Northcott";
    case RegionKind::NonNorthcottLargeB:
      return "NonNorthcottLargeB";
    case RegionKind::NonNorthcottAllB:
      return "NonNorthcottAllB";
    case RegionKind::CentralLineZetaVanishing:
      return "CentralLineZetaVanishing";
    case RegionKind::NoResult:
      return "NoResult";
  }
  return "NoResult";
}

double northcott_sigma_cut(long long q) {
  check_prime_power(q);
  return 0.5 - std::log(2.0) / std::log(static_cast<double>(q));
}

double moment_threshold_B(long long q, Cplx s, int trunc_deg) {
  check_prime_power(q);
  if (!(s.real() > 0.5))
    fail("DivergentParameter",
         "moment threshold needs Re(s) > 1/2, got " + std::to_string(s.real()));
  double lnq = std::log(static_cast<double>(q));
  Cplx den1 = Cplx(1, 0) - std::exp(-s * lnq);
  Cplx den2 = Cplx(1, 0) - std::exp((Cplx(1, 0) - s) * lnq);
  if (std::abs(den1) < 1e-12 || std::abs(den2) < 1e-12)
    fail("PoleInPrediction", "moment threshold has a pole at s = 1");
  CAlphaValue ca = c_alpha_euler_product(q, s - Cplx(0.5, 0), trunc_deg);
  return std::sqrt(ca.value) / std::abs(den1 * den2);
}

RegionVerdict classify_point(long long q, Cplx s, int trunc_deg) {
  check_prime_power(q);
  double sigma = s.real();
  double tau = s.imag();
  bool real_s = (tau == 0.0);
  bool cong = (q % 4 == 1);
  double cut = northcott_sigma_cut(q);

  RegionVerdict v;

  if (sigma == 0.0 && real_s) {
    if (q > 4) {
      v.kind = RegionKind::Northcott;
      v.provenance = "a";
      v.assumptions = {"q > 4"};
    } else {
      v.kind = RegionKind::NoResult;
      v.provenance = "none";
      v.note = "the s = 0 statement needs q > 4, and no other statement "
               "covers this point";
    }
    return v;
  }

  if (sigma < cut) {
    v.kind = RegionKind::Northcott;
    v.provenance = "b";
    return v;
  }

  if (real_s && sigma == 0.5) {
    if (cong) {
      v.kind = RegionKind::CentralLineZetaVanishing;
      v.provenance = "f";
      v.assumptions = {"q = 1 mod 4",
                       "statement for zeta_K(1/2), not zeta_K^*(1/2)"};
      v.note = "infinitely many fields have zeta_K(1/2) = 0";
    } else {
      v.kind = RegionKind::NoResult;
      v.provenance = "none";
      v.note = "the central-point statement is applied only under "
               "q = 1 mod 4";
    }
    return v;
  }

  if (real_s && sigma == 1.0) {
    if (cong) {
      v.kind = RegionKind::NonNorthcottAllB;
      v.provenance = "d";
      v.assumptions = {"q = 1 mod 4"};
    } else {
      v.kind = RegionKind::NoResult;
      v.provenance = "none";
      v.note = "the s = 1 statement is applied only under q = 1 mod 4";
    }
    return v;
  }

  if (real_s && sigma > 0.5 && sigma < 1.0) {
    if (cong) {
      v.kind = RegionKind::NonNorthcottAllB;
      v.provenance = "e";
      v.assumptions = {"q = 1 mod 4"};
    } else {
      v.kind = RegionKind::NoResult;
      v.provenance = "none";
      v.note = "the real-segment statement is applied only under "
               "q = 1 mod 4";
    }
    return v;
  }

  if (sigma > 0.5 && !(real_s && sigma == 1.0)) {
    if (cong) {
      v.kind = RegionKind::NonNorthcottLargeB;
      v.has_threshold = true;
      v.threshold_B = moment_threshold_B(q, s, trunc_deg);
      v.provenance = "g";
      v.assumptions = {"q = 1 mod 4"};
      if (sigma < 1.0)
        v.assumptions.push_back(
            "shifted-moment asymptotics, proven under constraints, "
            "for 1/2 < sigma < 1");
      v.note = "S_{q,s,B} is infinite for B strictly above the threshold";
      return v;
    }
    if (sigma > 1.0) {
      v.kind = RegionKind::NonNorthcottLargeB;
      v.has_threshold = true;
      v.threshold_B = right_threshold_B(q, sigma).value;
      v.provenance = "c";
      v.note = "S_{q,s,B} is infinite for B at or above the threshold";
      return v;
    }
    v.kind = RegionKind::NoResult;
    v.provenance = "none";
    v.note = "1/2 < sigma <= 1 off the covered cases needs q = 1 mod 4";
    return v;
  }

  if (sigma == 0.5) {
    v.kind = RegionKind::NoResult;
    v.provenance = "none";
    v.note = "off-real point on sigma = 1/2: if q^s is a Weil integer the "
             "central-vanishing argument applies, but that detection is "
             "not implemented";
    return v;
  }

  v.kind = RegionKind::NoResult;
  v.provenance = "gap";
  v.note = "uncovered strip 1/2 - log 2 / log q <= sigma < 1/2";
  return v;
}

std::pair<double, double> hasse_envelope(long long q, int g, Cplx u) {
  check_prime_power(q);
  if (g < 0) fail("DegreeOutOfRange", "hasse_envelope needs g >= 0");
  if (g == 0) return {1.0, 1.0};
  double r = std::sqrt(static_cast<double>(q)) * std::abs(u);
  double lower = std::pow(std::max(0.0, r - 1.0), 2.0 * g);
  double upper = std::pow(r + 1.0, 2.0 * g);
  return {lower, upper};
}

int genus_cap(long long q, Cplx s, double B) {
  check_prime_power(q);
  if (!(B > 0)) fail("ParameterOutOfRange", "genus_cap needs B > 0");
  double lnq = std::log(static_cast<double>(q));
  double cap = 0;
  if (s == Cplx(0, 0)) {
    if (q <= 4)
      fail("OutsideNorthcottRegion", "the s = 0 genus cap needs q > 4");
    cap = std::log((q - 1) * lnq * B) /
          (2.0 * std::log(std::sqrt(static_cast<double>(q)) - 1.0));
  } else {
    double sigma = s.real();
    if (!(sigma < northcott_sigma_cut(q)))
      fail("OutsideNorthcottRegion",
           "genus cap needs sigma < 1/2 - log 2 / log q");
    double big = std::log(std::pow(static_cast<double>(q), 0.5 - sigma) - 1.0);
    double a = 1.0 / (2.0 * big);
    double b = std::log((1.0 + std::pow(static_cast<double>(q), -sigma)) *
                        (1.0 + std::pow(static_cast<double>(q), 1.0 - sigma))) /
               (2.0 * big);
    cap = a * std::log(B) + b;
  }
  if (cap < 0) return 0;
  return static_cast<int>(std::floor(cap));
}

BoundReport couveignes_count_bound(long long q, int g, int n, double Q) {
  check_prime_power(q);
  if (g < 0) fail("DegreeOutOfRange", "couveignes_count_bound needs g >= 0");
  if (!(Q > 0)) fail("ParameterOutOfRange", "the constant Q must be positive");
  if (g == 0) {
    BoundReport r;
    r.name = "couveignes";
    r.value = 1.0;
    r.log_base_q = 0.0;
    r.exact = "1";
    r.note = "only the rational function field has genus 0";
    return r;
  }
  if (n < 0) n = (g == 1) ? 2 : 2 * g - 2;
  if (n < 2) fail("DegreeOutOfRange", "the field degree n must be at least 2");
  double lnq = std::log(static_cast<double>(q));
  double ln_n = std::log(static_cast<double>(n));
  double exponent = Q * ln_n * ln_n * (g + n * (1.0 + ln_n / lnq));
  double ln_bound = exponent * lnq;
  std::string note =
      "Q is not effective in the source and is user-supplied; degree capped "
      "by the gonality bound 2g - 2 for g >= 2 and by 2 for g = 1";
  if (g == 1) {
    // elliptic case counts the rational field alongside: 1 + q^exponent
    if (ln_bound < 700.0)
      return from_log("couveignes", std::log(1.0 + std::exp(ln_bound)),
                      std::move(note), q);
    return from_log("couveignes", ln_bound + std::log1p(std::exp(-ln_bound)),
                    std::move(note), q);
  }
  return from_log("couveignes", ln_bound, std::move(note), q);
}

BoundReport size_bound_S(long long q, Cplx s, double B, double Q) {
  check_prime_power(q);
  double sigma = s.real();
  if (!(sigma < northcott_sigma_cut(q)))
    fail("OutsideNorthcottRegion",
         "the size bound needs sigma < 1/2 - log 2 / log q");
  if (!(B > 1)) fail("ParameterOutOfRange", "the size bound needs B > 1");
  if (!(Q > 0)) fail("ParameterOutOfRange", "the constant Q must be positive");
  double lnq = std::log(static_cast<double>(q));
  double c_sigma =
      1.0 / (lnq * std::log(std::pow(static_cast<double>(q), 0.5 - sigma) - 1.0));
  double lb = std::log(B);
  double ln_bound = Q * c_sigma * lb * lb * lb * B * lnq;
  return from_log("size_bound",
                  ln_bound,
                  "exponent Q c_sigma (log B)^3 B with c_sigma = "
                  "1 / ((log q) log(q^(1/2 - sigma) - 1))",
                  q);
}

BoundReport right_threshold_B(long long q, double sigma) {
  check_prime_power(q);
  if (!(sigma > 1))
    fail("SigmaNotGreaterThanOne",
         "the right-of-strip threshold needs sigma > 1");
  double qa = static_cast<double>(q);
  double value =
      1.0 / ((1.0 - std::pow(qa, -sigma)) *
             std::pow(1.0 - std::pow(qa, 1.0 - sigma), 2.0));
  BoundReport r;
  r.name = "right_threshold";
  r.value = value;
  r.log_base_q = std::log(value) / std::log(qa);
  r.note = "every quadratic field satisfies zeta_K(sigma) <= this; "
           "S_{q,sigma,B} is infinite for B at or above it";
  if (sigma == std::floor(sigma) && sigma <= 21.0) {
    // q^(3k-2) / ((q^k - 1)(q^(k-1) - 1)^2); the denominator is smaller
    // than the numerator, so one overflow check covers both
    int k = static_cast<int>(sigma);
    try {
      long long num = ipow_checked(q, 3 * k - 2, "right_threshold_B");
      long long den = (ipow(q, k) - 1) * (ipow(q, k - 1) - 1) *
                      (ipow(q, k - 1) - 1);
      long long g = std::gcd(num, den);
      r.exact = std::to_string(num / g) + "/" + std::to_string(den / g);
    } catch (const Error&) {
      // too large for an exact fraction; the binary64 value stands
    }
  }
  return r;
}

std::vector<BoundReport> misc_count_bounds(long long q, int g, double c1,
                                           double c2) {
  long long p = char_of(q);
  if (g < 1) fail("DegreeOutOfRange", "misc_count_bounds needs g >= 1");
  if (!(c1 > 0) || !(c2 > 0))
    fail("ParameterOutOfRange", "c1 and c2 must be positive");
  double lnq = std::log(static_cast<double>(q));
  double lnp = std::log(static_cast<double>(p));
  double gg = static_cast<double>(g);

  double lt = gg * std::log(2.0 * gg) + 0.25 * gg * (gg + 1.0) * lnq +
              (33.0 / 4.0) * gg * gg * lnp;
  BoundReport a = from_log(
      "lipnowski_tsimerman", lt,
      "(2g)^g q^(g(g+1)/4) p^((33/4) g^2); the o(1) term in the "
      "isogeny-class exponent is dropped, so this is not effective as stated",
      q);

  double djk = c1 * gg * std::log(gg) + c2 * gg * lnq;
  BoundReport b = from_log("de_jong_katz", djk,
                           "g^(c1 g) q^(c2 g); c1 and c2 are not effective "
                           "and are user-supplied",
                           q);
  return {a, b};
}

double a_ell_upper(long long q, int g, int ell) {
  check_prime_power(q);
  if (g < 0) fail("DegreeOutOfRange", "a_ell_upper needs g >= 0");
  if (ell < 1) fail("DegreeOutOfRange", "a_ell_upper needs ell >= 1");
  double qa = static_cast<double>(q);
  double l = static_cast<double>(ell);
  return std::pow(qa, l) / l + std::pow(qa, l / 3.0) +
         (2.0 * g / l) * (std::pow(qa, l / 2.0) + std::pow(qa, l / 4.0));
}

double zeta_sigma_upper(long long q, int g, double sigma) {
  check_prime_power(q);
  if (g < 0) fail("DegreeOutOfRange", "zeta_sigma_upper needs g >= 0");
  if (!(sigma > 1))
    fail("SigmaNotGreaterThanOne", "zeta_sigma_upper needs sigma > 1");
  double qa = static_cast<double>(q);
  double inner = 1.0 / (std::pow(qa, sigma - 1.0 / 3.0) - 1.0) -
                 std::log(1.0 - std::pow(qa, 1.0 - sigma)) -
                 2.0 * g * std::log(1.0 - std::pow(qa, 0.5 - sigma)) -
                 2.0 * g * std::log(1.0 - std::pow(qa, 0.25 - sigma));
  double qs = std::pow(qa, sigma);
  return std::exp(inner * qs / (qs - 1.0));
}

}  // namespace ffzeta

#include "ffzeta/moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "ffzeta/character.hpp"
#include "ffzeta/errors.hpp"
#include "ffzeta/numutil.hpp"
#include "ffzeta/parallel.hpp"
#include "ffzeta/sieve.hpp"

namespace ffzeta {

namespace {

using ld = long double;
using CplxL = std::complex<ld>;

CplxL cl(Cplx z) { return CplxL(z.real(), z.imag()); }

CplxL pow_int(CplxL b, int e) {
  CplxL r(1);
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

// tau_C(P^m) = sum_{j=0..m} t1^j t2^(m-j) with t_i = |P|^-gamma_i
CplxL tau_prime_power(CplxL t1, CplxL t2, int m) {
  CplxL cur = pow_int(t2, m);
  CplxL sum = cur;
  CplxL ratio = t1 / t2;
  for (int j = 1; j <= m; ++j) {
    cur *= ratio;
    sum += cur;
  }
  return sum;
}

CplxL tau_factors(CplxL g1, CplxL g2, const Factorization& fac, ld lnq) {
  CplxL val(1);
  for (const auto& [P, m] : fac.factors) {
    ld lp = P.degree() * lnq;
    CplxL t1 = std::exp(-g1 * lp);
    CplxL t2 = std::exp(-g2 * lp);
    val *= tau_prime_power(t1, t2, m);
  }
  return val;
}

Cplx tau_checked(const ShiftSet& C, const Factorization& fac) {
  ld lnq = std::log(static_cast<ld>(fac.field->q()));
  CplxL val = tau_factors(cl(C.g1), cl(C.g2), fac, lnq);

  ld d2 = 1;
  long long deg = 0;
  for (const auto& [P, m] : fac.factors) {
    d2 *= m + 1;
    deg += static_cast<long long>(P.degree()) * m;
  }
  ld minre = std::min(C.g1.real(), C.g2.real());
  ld bound = d2 * std::exp(-minre * deg * lnq);
  if (std::abs(val) > bound * (1 + 1e-9L) + 1e-300L)
    fail("InternalCheck", "tau exceeds its divisor bound");
  return Cplx(static_cast<double>(val.real()), static_cast<double>(val.imag()));
}

// sum_{l>=1} tau_C(P^{2l}) x^l with x = 1/|P|, as a closed rational function:
// the even part of 1/((1 - t1 z)(1 - t2 z)) at z^2 = x, minus the l = 0 term.
CplxL even_tau_series_closed(CplxL t1, CplxL t2, ld x) {
  CplxL t1s = t1 * t1, t2s = t2 * t2;
  CplxL num = (t1 * t2 + t1s + t2s - t1s * t2s * x) * x;
  CplxL den = (CplxL(1) - t1s * x) * (CplxL(1) - t2s * x);
  return num / den;
}

// the same series summed term by term; converges when |t_i^2 x| < 1
CplxL even_tau_series_loop(CplxL t1, CplxL t2, ld x, const char* where) {
  CplxL acc(0);
  ld xl = 1;
  for (int l = 1; l <= 400; ++l) {
    xl *= x;
    CplxL term = tau_prime_power(t1, t2, 2 * l) * xl;
    acc += term;
    if (std::abs(term) <= 1e-19L * (1 + std::abs(acc))) return acc;
  }
  fail("InternalCheck", std::string(where) + ": tau series did not converge");
}

ld binom_ld(int a, int b) {
  if (b < 0 || b > a) return 0;
  ld r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

long long squarefree_total(long long q, int n) {
  return squarefree_count(q, n);
}

}  // namespace

Cplx tau(const ShiftSet& C, const Poly& f) {
  if (f.is_zero()) fail("ZeroPolynomial", "tau: f must be nonzero");
  if (!f.is_monic()) fail("NonMonic", "tau: f must be monic");
  return tau_checked(C, factor(f));
}

Cplx tau(const ShiftSet& C, const Factorization& fac) {
  if (fac.unit_rank != fac.field->one())
    fail("NonMonic", "tau: factorization must come from a monic polynomial");
  return tau_checked(C, fac);
}

CAlphaValue c_alpha_euler_product(long long q, Cplx alpha, int trunc_deg) {
  long long p;
  int e;
  factor_prime_power(q, p, e);
  if (!(alpha.real() > 0))
    fail("DivergentParameter",
         "c_alpha_euler_product requires Re(alpha) > 0, got " +
             std::to_string(alpha.real()));
  if (trunc_deg < 1)
    fail("DegreeOutOfRange", "truncation degree must be >= 1");

  ld lnq = std::log(static_cast<ld>(q));
  CplxL a = cl(alpha);
  ld total_log = 0;
  for (int d = 1; d <= trunc_deg; ++d) {
    long long ad = irreducible_count(q, d);
    ld lq = d * lnq;
    ld x = std::exp(-lq);
    CplxL t1 = std::exp(-a * lq);
    CplxL t2 = std::conj(t1);

    // closed form: with x_i = t_i sqrt(x), the series equals
    // (x1 x2 + x1^2 + x2^2 - x1^2 x2^2) / ((1 - x1^2)(1 - x2^2))
    ld s_closed = even_tau_series_closed(t1, t2, x).real();
    ld delta = s_closed / (1 + x);
    ld fac_closed = 1 + delta;

    ld s_loop = even_tau_series_loop(t1, t2, x, "c_alpha").real();
    ld fac_series = 1 + s_loop / (1 + x);
    if (std::abs(fac_closed - fac_series) >
        1e-12L * std::max<ld>(1, std::abs(fac_closed)))
      fail("InternalCheck",
           "c_alpha bracket forms disagree at degree " + std::to_string(d));

    total_log += ad * std::log1p(delta);
  }

  CAlphaValue out;
  out.value = static_cast<double>(std::exp(total_log));
  ld t = std::min<ld>(1 + 2 * alpha.real(), 2);
  ld r = std::exp((1 - t) * lnq);
  out.log_tail_bound =
      static_cast<double>(5.0L / (trunc_deg + 1) * std::pow(r, trunc_deg + 1) /
                          (1 - r));
  std::ostringstream note;
  note << "truncated at prime degree " << trunc_deg << "; first omitted degree "
       << (trunc_deg + 1) << "; crude log-tail bound " << out.log_tail_bound
       << " from sum over deg P > " << trunc_deg
       << " of 5 |P|^-t with t = min(1 + 2 Re alpha, 2)";
  out.tail_note = note.str();
  return out;
}

Cplx predicted_shifted_moment(long long q, int g, Cplx alpha1, Cplx alpha2,
                              int trunc_deg) {
  long long pp;
  int pe;
  factor_prime_power(q, pp, pe);
  if (g < 0) fail("DegreeOutOfRange", "genus must be >= 0");
  if (trunc_deg < 1)
    fail("DegreeOutOfRange", "truncation degree must be >= 1");
  for (Cplx a : {alpha1, alpha2}) {
    double r = std::abs(a.real());
    if (!(r > 0 && r < 0.5))
      fail("DivergentParameter",
           "predicted_shifted_moment requires 0 < |Re(alpha_i)| < 1/2");
  }
  // canonical order makes the subset sum bitwise symmetric in (alpha1, alpha2)
  if (alpha2.real() < alpha1.real() ||
      (alpha2.real() == alpha1.real() && alpha2.imag() < alpha1.imag()))
    std::swap(alpha1, alpha2);

  ld lnq = std::log(static_cast<ld>(q));
  std::vector<long long> ad(static_cast<size_t>(trunc_deg) + 1, 0);
  for (int d = 1; d <= trunc_deg; ++d) ad[d] = irreducible_count(q, d);

  CplxL total(0);
  for (int mask = 0; mask < 4; ++mask) {
    CplxL gam1 = cl(alpha1) * ((mask & 1) ? -1.0L : 1.0L);
    CplxL gam2 = cl(alpha2) * ((mask & 2) ? -1.0L : 1.0L);
    CplxL flipped = ((mask & 1) ? cl(alpha1) : CplxL(0)) +
                    ((mask & 2) ? cl(alpha2) : CplxL(0));
    const CplxL pair_sums[3] = {gam1 + gam1, gam1 + gam2, gam2 + gam2};

    CplxL zprod(1);
    for (CplxL s : pair_sums) {
      CplxL den = CplxL(1) - std::exp(-s * lnq);
      if (std::abs(den) < 1e-12L)
        fail("PoleInPrediction",
             "zeta_q factor has a pole: gamma_i + gamma_j = 0 in a subset term");
      zprod /= den;
    }

    CplxL log_a(0);
    for (int d = 1; d <= trunc_deg; ++d) {
      ld lq = d * lnq;
      ld x = std::exp(-lq);
      CplxL t1 = std::exp(-gam1 * lq);
      CplxL t2 = std::exp(-gam2 * lq);
      CplxL e1 = CplxL(1) - t1 * t1 * x;  // 1 - |P|^-(1+2 gamma_1)
      CplxL e2 = CplxL(1) - t1 * t2 * x;
      CplxL e3 = CplxL(1) - t2 * t2 * x;
      CplxL s_closed = even_tau_series_closed(t1, t2, x);
      CplxL f4 = CplxL(1) + s_closed / (1 + x);
      ld ratio = std::max(std::norm(t1), std::norm(t2)) * x;
      if (ratio < 0.5L) {
        CplxL s_loop = even_tau_series_loop(t1, t2, x, "predicted_shifted_moment");
        if (std::abs(s_closed - s_loop) > 1e-10L * (1 + std::abs(s_closed)))
          fail("InternalCheck", "A_C series forms disagree at degree " +
                                    std::to_string(d));
      }
      // each Euler factor has positive real part, so per-factor principal
      // logs are safe; integer multiplicities make the final exp exact
      log_a += static_cast<ld>(ad[d]) *
               (std::log(e1) + std::log(e2) + std::log(e3) + std::log(f4));
    }

    total += std::exp(-2.0L * g * flipped * lnq) * std::exp(log_a) * zprod;
  }
  return Cplx(static_cast<double>(total.real()),
              static_cast<double>(total.imag()));
}

MomentReport second_moment_exhaustive(long long q, int g, Cplx alpha,
                                      int threads, int trunc_deg,
                                      long long budget) {
  long long p;
  int e;
  factor_prime_power(q, p, e);
  FieldRef field = FieldSpec::make(p, e);
  if (q % 4 != 1)
    fail("WrongCongruence", "second_moment_exhaustive requires q = 1 mod 4");
  if (!(alpha.real() > 0))
    fail("DivergentParameter", "second moment requires Re(alpha) > 0");
  if (g < 0) fail("DegreeOutOfRange", "genus must be >= 0");
  int n = 2 * g + 1;
  long long total = ipow_checked(q, n, "second_moment_exhaustive");
  if (total > budget)
    fail("BudgetExceeded", "H_" + std::to_string(n) + " needs " +
                               std::to_string(total) + " candidates, budget " +
                               std::to_string(budget));

  IrreducibleTable table;
  if (g >= 1) table = irreducible_table(field, g, budget);

  double lnq = std::log(static_cast<double>(q));
  Cplx u = std::exp(-(Cplx(0.5, 0.0) + alpha) * lnq);

  struct Partial {
    ld sum = 0;
    long long count = 0;
  };
  auto partials = run_blocks<Partial>(
      total, 512, threads, [&](long long lo, long long hi) {
        Partial p;
        for (long long N = lo; N < hi; ++N) {
          Poly D = monic_by_index(field, n, N);
          if (!is_squarefree(D)) continue;
          double w = 1.0;
          if (g >= 1) {
            CurveModel curve = CurveModel::make(field, D);
            PrimeCounts counts = prime_counts_via_splitting(curve, g, table);
            LPolynomial L = lpoly_from_prime_counts(counts, q, g);
            w = std::norm(lpoly_eval(L, u));
          }
          p.sum += w;
          p.count += 1;
        }
        return p;
      });

  long long sf = 0;
  std::vector<ld> sums;
  sums.reserve(partials.size());
  for (const auto& p : partials) {
    sf += p.count;
    sums.push_back(p.sum);
  }
  if (sf != squarefree_total(q, n))
    fail("InternalCheck", "squarefree census mismatch over H_" +
                              std::to_string(n));
  ld grand = tree_combine<ld>(
      std::move(sums), [](ld x, ld y) { return x + y; }, 0.0L);

  MomentReport rep;
  rep.q = q;
  rep.g = g;
  rep.alpha = alpha;
  rep.empirical = static_cast<double>(grand / sf);
  CAlphaValue ca = c_alpha_euler_product(q, alpha, trunc_deg);
  rep.predicted = ca.value;
  rep.truncation_deg = trunc_deg;
  rep.ratio = rep.empirical / rep.predicted;
  if (std::abs(alpha.real() - 0.5) < 1e-12 && q <= 16)
    rep.tail_flag =
        "main-term error is not guaranteed to vanish at Re(alpha) = 1/2 for "
        "q <= 16";
  return rep;
}

AfePair approx_funceq_eval(const CurveModel& curve, Cplx alpha,
                           long long budget) {
  const FieldRef& field = curve.field;
  long long q = field->q();
  int g = curve.genus;
  if (ipow_checked(q, 2 * g, "approx_funceq_eval") > budget)
    fail("BudgetExceeded", "character sums need q^" + std::to_string(2 * g) +
                               " terms, budget " + std::to_string(budget));

  ld lnq = std::log(static_cast<ld>(q));

  // exact side, via the splitting route
  LPolynomial L;
  if (g == 0) {
    L.q = q;
    L.genus = 0;
    L.c = {1};
  } else {
    IrreducibleTable table = irreducible_table(field, g, budget);
    PrimeCounts counts = prime_counts_via_splitting(curve, g, table);
    L = lpoly_from_prime_counts(counts, q, g);
  }
  Cplx u = std::exp(-(Cplx(0.5, 0.0) + alpha) *
                    std::log(static_cast<double>(q)));
  double lhs = std::norm(lpoly_eval(L, u));

  double rhs;
  if (g == 0) {
    rhs = 1.0;  // only f = 1 contributes to either sum
  } else {
    MonicSieve sieve(field, 2 * g, budget);
    sieve.ensure_char_tables(2 * g);
    std::vector<int8_t> chiP = sieve.chi_of(curve.D, 2 * g);

    CplxL a = cl(alpha);
    CplxL g1p = a, g2p = std::conj(a);
    CplxL S1(0), S2(0);
    for (int deg = 0; deg <= 2 * g; ++deg) {
      ld wdeg = std::exp(-0.5L * deg * lnq);  // |f|^-1/2
      long long count = ipow(q, deg);
      bool short_sum = deg <= 2 * g - 1;
      for (long long N = 0; N < count; ++N) {
        int chi = sieve.chi_monic(chiP, deg, N);
        if (chi == 0) continue;
        Factorization fac = sieve.factorization_idx(deg, N);
        CplxL t1 = tau_factors(g1p, g2p, fac, lnq);
        S1 += static_cast<ld>(chi) * wdeg * t1;
        if (short_sum) {
          CplxL t2 = tau_factors(-g1p, -g2p, fac, lnq);
          S2 += static_cast<ld>(chi) * wdeg * t2;
        }
      }
    }
    ld scale = std::exp(-4.0L * g * a.real() * lnq);
    rhs = static_cast<double>(S1.real() + scale * S2.real());
  }

  if (std::abs(lhs - rhs) > 1e-9 * (1 + std::abs(lhs)))
    fail("InternalCheck",
         "approximate functional equation mismatch for D = " + curve.D.str());
  return {lhs, rhs};
}

CharsumBound charsum_bound_check(const Poly& f, int n) {
  if (f.is_zero()) fail("ZeroPolynomial", "charsum_bound_check: f = 0");
  if (!f.is_monic()) fail("NonMonic", "charsum_bound_check: f must be monic");
  Factorization fac = factor(f);
  bool trivial = true;
  for (const auto& [P, m] : fac.factors)
    if (m % 2 != 0) trivial = false;
  if (trivial)
    fail("TrivialCharacter",
         "chi_f is trivial: f is a perfect square times a constant");
  if (n < 0 || n >= f.degree())
    fail("DegreeOutOfRange", "charsum bound needs 0 <= n < deg f");

  const FieldRef& field = f.field();
  long long sum = 0;
  for_each_monic(field, n, [&](long long, const Poly& B) {
    int chi = 1;
    for (const auto& [P, m] : fac.factors) {
      int s = euler_symbol(B, P);
      if (s == 0) {
        chi = 0;
        break;
      }
      if (m % 2 != 0 && s < 0) chi = -chi;
    }
    sum += chi;
  });

  CharsumBound out;
  out.lhs = std::abs(static_cast<double>(sum));
  out.rhs = static_cast<double>(
      binom_ld(f.degree() - 1, n) *
      std::exp(0.5L * n * std::log(static_cast<ld>(field->q()))));
  out.ok = out.lhs <= out.rhs * (1 + 1e-12);
  return out;
}

SquareAverage square_average_check(long long q, int g, const Poly& f,
                                   long long budget) {
  long long p;
  int e;
  factor_prime_power(q, p, e);
  FieldRef field = FieldSpec::make(p, e);
  if (field->p() == 2)
    fail("EvenCharacteristic", "the hyperelliptic ensemble needs odd q");
  if (f.is_zero()) fail("ZeroPolynomial", "square_average_check: f = 0");
  if (!f.is_monic()) fail("NonMonic", "square_average_check: f must be monic");
  if (f.field() != field) fail("FieldMismatch", "f must live over F_q");
  if (g < 0) fail("DegreeOutOfRange", "genus must be >= 0");
  int n = 2 * g + 1;
  long long total = ipow_checked(q, n, "square_average_check");
  if (total > budget)
    fail("BudgetExceeded", "H_" + std::to_string(n) + " needs " +
                               std::to_string(total) + " candidates, budget " +
                               std::to_string(budget));

  SquareAverage out;
  for_each_monic(field, n, [&](long long, const Poly& D) {
    if (!is_squarefree(D)) return;
    out.total_count += 1;
    if (f.is_constant() || poly_gcd(D, f).degree() == 0) out.coprime_count += 1;
  }, budget);
  if (out.total_count != squarefree_total(q, n))
    fail("InternalCheck", "squarefree census mismatch over H_" +
                              std::to_string(n));

  ld main = 1;
  Factorization fac = factor(f);
  for (const auto& [P, m] : fac.factors) {
    (void)m;
    main /= 1 + std::exp(-P.degree() * std::log(static_cast<ld>(q)));
  }

  out.empirical = static_cast<double>(out.coprime_count) /
                  static_cast<double>(out.total_count);
  out.main_term = static_cast<double>(main);
  out.abs_err = std::abs(out.empirical - out.main_term);
  out.ok = out.abs_err <= 5.0 * std::pow(static_cast<double>(q), -2.0 * g);
  return out;
}

}  // namespace ffzeta

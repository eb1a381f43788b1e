#include "ffzeta/zetafn.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "ffzeta/aberth.hpp"
#include "ffzeta/character.hpp"
#include "ffzeta/numutil.hpp"
#include "ffzeta/sieve.hpp"

namespace ffzeta {

namespace {

std::string cplx_str(Cplx s) {
  std::ostringstream os;
  os << s.real();
  if (s.imag() != 0) os << (s.imag() < 0 ? "" : "+") << s.imag() << "i";
  return os.str();
}

long long narrow(int128 v, const char* what) {
  if (v > int128(9223372036854775807LL) || v < -int128(9223372036854775807LL)) {
    fail("Overflow", std::string(what) + " exceeds 64-bit range");
  }
  return static_cast<long long>(v);
}

// exact square root of q when q is a perfect square
bool square_root_of(long long q, long long* r) {
  long long s = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(q))));
  for (long long t = s > 1 ? s - 1 : 0; t <= s + 1; ++t) {
    if (t * t == q) {
      *r = t;
      return true;
    }
  }
  return false;
}

// L divided by (q u^2 - 1), or nullopt when the division is not exact
std::optional<std::vector<long long>> divide_qu2_minus_1(
    const std::vector<long long>& c, long long q) {
  int d = static_cast<int>(c.size()) - 1;
  if (d < 2) return std::nullopt;
  std::vector<long long> t = c;
  std::vector<long long> Q(static_cast<size_t>(d - 1), 0);
  for (int j = d - 2; j >= 0; --j) {
    if (t[j + 2] % q != 0) return std::nullopt;
    Q[j] = t[j + 2] / q;
    t[j + 2] = 0;
    t[j] += Q[j];
  }
  if (t[0] != 0 || t[1] != 0) return std::nullopt;
  return Q;
}

// L divided by (r u - sign), sign = +1 or -1; exact or nullopt
std::optional<std::vector<long long>> divide_ru_minus_sign(
    const std::vector<long long>& c, long long r, int sign) {
  int d = static_cast<int>(c.size()) - 1;
  if (d < 1) return std::nullopt;
  std::vector<long long> Q(static_cast<size_t>(d), 0);
  long long carry = 0;  // Q_j while descending
  for (int j = d; j >= 1; --j) {
    long long num = c[j] + sign * carry;
    if (num % r != 0) return std::nullopt;
    Q[j - 1] = num / r;
    carry = Q[j - 1];
  }
  if (c[0] != -sign * carry) return std::nullopt;
  return Q;
}

int multiplicity_by_division(const LPolynomial& L, bool negative_root) {
  long long r = 0;
  int count = 0;
  std::vector<long long> cur = L.c;
  if (square_root_of(L.q, &r)) {
    int sign = negative_root ? -1 : 1;
    while (true) {
      auto nxt = divide_ru_minus_sign(cur, r, sign);
      if (!nxt) break;
      cur = *nxt;
      ++count;
    }
  } else {
    while (true) {
      auto nxt = divide_qu2_minus_1(cur, L.q);
      if (!nxt) break;
      cur = *nxt;
      ++count;
    }
  }
  return count;
}

bool near_integer_multiple(double x, double period, double tol) {
  double k = std::round(x / period);
  return std::abs(x - k * period) <= tol * std::max(1.0, std::abs(x));
}

struct PointShape {
  bool at_one = false;       // u0 = 1
  bool at_qinv = false;      // u0 = 1/q
  bool central_pos = false;  // u0 = +q^(-1/2)
  bool central_neg = false;  // u0 = -q^(-1/2)
};

PointShape classify_u0(long long q, Cplx s) {
  const double tol = 1e-12;
  const double period = 2.0 * M_PI / std::log(static_cast<double>(q));
  PointShape ps;
  bool tau_zero = near_integer_multiple(s.imag(), period, tol);
  bool tau_half = near_integer_multiple(s.imag() - period / 2.0, period, tol);
  if (std::abs(s.real()) <= tol && tau_zero) ps.at_one = true;
  if (std::abs(s.real() - 1.0) <= tol && tau_zero) ps.at_qinv = true;
  if (std::abs(s.real() - 0.5) <= tol && tau_zero) ps.central_pos = true;
  if (std::abs(s.real() - 0.5) <= tol && tau_half) ps.central_neg = true;
  return ps;
}

std::complex<long double> eval_ld(const std::vector<long long>& c,
                                  std::complex<long double> u) {
  std::complex<long double> v = 0;
  for (size_t i = c.size(); i-- > 0;) v = v * u + static_cast<long double>(c[i]);
  return v;
}

}  // namespace

CurveModel CurveModel::make(FieldRef field, Poly D) {
  if (field->p() == 2) fail("EvenCharacteristic", "models require odd q");
  if (D.is_zero()) fail("ZeroPolynomial", "D must be nonzero");
  if (!D.is_monic()) fail("NonMonic", "D must be monic");
  if (D.degree() % 2 == 0) fail("EvenDegree", "D must have odd degree");
  if (!is_squarefree(D)) fail("NonSquarefree", "D must be squarefree");
  CurveModel m;
  m.genus = (D.degree() - 1) / 2;
  m.field = std::move(field);
  m.D = std::move(D);
  return m;
}

bool lpoly_basic_ok(const LPolynomial& L) {
  if (static_cast<int>(L.c.size()) != 2 * L.genus + 1) return false;
  if (L.c[0] != 1) return false;
  for (int n = 0; n <= L.genus; ++n) {
    int128 rhs = int128(ipow(L.q, L.genus - n)) * L.c[n];
    if (int128(L.c[2 * L.genus - n]) != rhs) return false;
  }
  return true;
}

LPolynomial lpoly_from_charsum(const CurveModel& curve, long long budget) {
  const long long q = curve.field->q();
  const int top = 2 * curve.genus + 1;

  int128 total = 0;
  for (int n = 0; n <= top; ++n) total += int128(ipow_checked(q, n));
  if (total > int128(budget)) {
    fail("BudgetExceeded", "character sums need " + int128_to_string(total) +
                               " polynomial visits");
  }

  MonicSieve sieve(curve.field, top, budget);
  sieve.ensure_char_tables(top);
  return lpoly_from_charsum(curve, sieve);
}

LPolynomial lpoly_from_charsum(const CurveModel& curve, const MonicSieve& sieve) {
  const long long q = curve.field->q();
  const int g = curve.genus;
  const int top = 2 * g + 1;
  if (sieve.max_deg() < top) {
    fail("BudgetExceeded", "sieve too shallow for genus " + std::to_string(g));
  }
  std::vector<int8_t> chiP = sieve.chi_of(curve.D, top);

  LPolynomial L;
  L.q = q;
  L.genus = g;
  L.c.assign(static_cast<size_t>(2 * g + 1), 0);
  for (int n = 0; n <= 2 * g; ++n) {
    long long sum = 0;
    const long long count = ipow(q, n);
    for (long long N = 0; N < count; ++N) sum += sieve.chi_monic(chiP, n, N);
    L.c[static_cast<size_t>(n)] = sum;
  }

  long long tail = 0;
  const long long count_top = ipow(q, top);
  for (long long N = 0; N < count_top; ++N) tail += sieve.chi_monic(chiP, top, N);
  if (tail != 0) fail("InternalCheck", "degree 2g+1 character sum must vanish");
  if (!lpoly_basic_ok(L)) fail("InternalCheck", "charsum route broke the coefficient symmetry");
  return L;
}

PrimeCounts prime_counts_via_splitting(const CurveModel& curve, int max_deg,
                                       long long budget) {
  IrreducibleTable tab = irreducible_table(curve.field, max_deg, budget);
  return prime_counts_via_splitting(curve, max_deg, tab);
}

PrimeCounts prime_counts_via_splitting(const CurveModel& curve, int max_deg,
                                       const IrreducibleTable& table) {
  if (table.max_deg < max_deg) fail("BudgetExceeded", "irreducible table too shallow");
  PrimeCounts out;
  out.q = curve.field->q();
  out.max_deg = max_deg;
  for (int d = 1; d <= max_deg; ++d) out.a[d] = 0;
  if (max_deg >= 1) out.a[1] = 1;  // ramified infinite place

  for (int e = 1; e <= max_deg; ++e) {
    for (const Poly& P : table.by_degree[static_cast<size_t>(e)]) {
      int chi = euler_symbol(curve.D, P);
      if (chi == 1) {
        out.a[e] += 2;
      } else if (chi == 0) {
        out.a[e] += 1;
      } else if (2 * e <= max_deg) {
        out.a[2 * e] += 1;
      }
    }
  }
  return out;
}

LPolynomial lpoly_from_prime_counts(const PrimeCounts& counts, long long q,
                                    int genus) {
  if (counts.max_deg < genus) {
    fail("InsufficientCounts", "need place counts to degree " +
                                   std::to_string(genus) + ", have " +
                                   std::to_string(counts.max_deg));
  }
  std::vector<int128> p(static_cast<size_t>(genus) + 1, 0);
  for (int l = 1; l <= genus; ++l) {
    int128 s = int128(ipow_checked(q, l)) + 1;
    for (int d = 1; d <= l; ++d) {
      if (l % d == 0) s -= int128(d) * counts.at(d);
    }
    p[static_cast<size_t>(l)] = s;
  }

  // Newton: n e_n = sum_{i=1..n} (-1)^(i-1) e_{n-i} p_i, with c_n = (-1)^n e_n
  std::vector<int128> e(static_cast<size_t>(genus) + 1, 0);
  e[0] = 1;
  for (int n = 1; n <= genus; ++n) {
    int128 s = 0;
    for (int i = 1; i <= n; ++i) {
      int128 term = e[static_cast<size_t>(n - i)] * p[static_cast<size_t>(i)];
      s += (i % 2 == 1) ? term : -term;
    }
    if (s % n != 0) fail("InternalCheck", "Newton step not integral");
    e[static_cast<size_t>(n)] = s / n;
  }

  LPolynomial L;
  L.q = q;
  L.genus = genus;
  L.c.assign(static_cast<size_t>(2 * genus) + 1, 0);
  for (int n = 0; n <= genus; ++n) {
    int128 cn = (n % 2 == 0) ? e[static_cast<size_t>(n)] : -e[static_cast<size_t>(n)];
    L.c[static_cast<size_t>(n)] = narrow(cn, "L coefficient");
  }
  for (int n = genus + 1; n <= 2 * genus; ++n) {
    int128 cn = int128(ipow(q, n - genus)) * L.c[static_cast<size_t>(2 * genus - n)];
    L.c[static_cast<size_t>(n)] = narrow(cn, "L coefficient");
  }
  if (!lpoly_basic_ok(L)) fail("InternalCheck", "prime-count route broke the coefficient symmetry");
  return L;
}

ExtContext make_ext_context(const FieldRef& field, int n, long long budget) {
  if (n < 1) fail("DegreeMismatch", "extension degree must be >= 1");
  long long qn = ipow_checked(field->q(), n);
  if (qn > budget) {
    fail("BudgetExceeded", "direct count needs " + std::to_string(qn) + " field elements");
  }

  ExtContext ctx;
  ctx.base = field;
  ctx.n = n;
  const int e = field->e();
  ctx.ext = (n == 1) ? field : FieldSpec::make(field->p(), e * n);
  const FieldRef& G = ctx.ext;

  ctx.emb.resize(static_cast<size_t>(field->q()));
  if (n == 1) {
    for (long long r = 0; r < field->q(); ++r) ctx.emb[static_cast<size_t>(r)] = static_cast<uint64_t>(r);
  } else if (e == 1) {
    for (long long r = 0; r < field->q(); ++r) ctx.emb[static_cast<size_t>(r)] = G->from_int(r);
  } else {
    // find a root of the base modulus (a polynomial over F_p) inside G
    const std::vector<long long>& M = field->modulus();
    uint64_t rho = 0;
    bool found = false;
    for (uint64_t cand = 0; cand < static_cast<uint64_t>(G->q()); ++cand) {
      uint64_t acc = 0;
      for (size_t i = M.size(); i-- > 0;) {
        acc = G->add(G->mul(acc, cand), G->from_int(M[i]));
      }
      if (acc == 0) {
        rho = cand;
        found = true;
        break;
      }
    }
    if (!found) fail("InternalCheck", "no root of the base modulus in the extension");
    for (long long r = 0; r < field->q(); ++r) {
      std::vector<long long> co = field->coords(static_cast<uint64_t>(r));
      uint64_t acc = 0;
      for (size_t i = co.size(); i-- > 0;) {
        acc = G->add(G->mul(acc, rho), G->from_int(co[i]));
      }
      ctx.emb[static_cast<size_t>(r)] = acc;
    }
  }

  const uint64_t gq = static_cast<uint64_t>(G->q());
  ctx.sqcount.assign(static_cast<size_t>(gq), 0);
  for (uint64_t y = 0; y < gq; ++y) ctx.sqcount[G->mul(y, y)]++;
  return ctx;
}

long long point_count_direct(const CurveModel& curve, int n, long long budget) {
  return point_count_direct(curve, make_ext_context(curve.field, n, budget));
}

long long point_count_direct(const CurveModel& curve, const ExtContext& ctx) {
  if (ctx.base.get() != curve.field.get()) fail("FieldMismatch", "context built for another field");
  const FieldRef& G = ctx.ext;

  std::vector<uint64_t> dd(static_cast<size_t>(curve.D.degree()) + 1);
  for (int i = 0; i <= curve.D.degree(); ++i) {
    dd[static_cast<size_t>(i)] = ctx.emb[curve.D.coeff(i)];
  }

  const uint64_t gq = static_cast<uint64_t>(G->q());
  long long total = 1;  // the single place above infinity on these models
  for (uint64_t t = 0; t < gq; ++t) {
    uint64_t v = 0;
    for (size_t i = dd.size(); i-- > 0;) v = G->add(G->mul(v, t), dd[i]);
    total += ctx.sqcount[v];
  }
  return total;
}

PrimeCounts prime_counts_from_lpoly(const LPolynomial& L, int max_deg) {
  // power sums of the inverse roots from the coefficients
  std::vector<int128> p(static_cast<size_t>(max_deg) + 1, 0);
  for (int n = 1; n <= max_deg; ++n) {
    int128 s = int128(n) * L.coeff(n);
    for (int i = 1; i < n; ++i) s += int128(L.coeff(i)) * p[static_cast<size_t>(n - i)];
    p[static_cast<size_t>(n)] = -s;
  }
  std::vector<int128> N(static_cast<size_t>(max_deg) + 1, 0);
  for (int d = 1; d <= max_deg; ++d) {
    N[static_cast<size_t>(d)] = int128(ipow_checked(L.q, d)) + 1 - p[static_cast<size_t>(d)];
  }
  PrimeCounts out;
  out.q = L.q;
  out.max_deg = max_deg;
  for (int n = 1; n <= max_deg; ++n) {
    int128 s = 0;
    for (int d = 1; d <= n; ++d) {
      if (n % d == 0) s += int128(mobius_int(n / d)) * N[static_cast<size_t>(d)];
    }
    if (s % n != 0 || s < 0) fail("InternalCheck", "place counts must be nonnegative integers");
    out.a[n] = narrow(s / n, "place count");
  }
  return out;
}

long long point_count_from_lpoly(const LPolynomial& L, int n) {
  std::vector<int128> p(static_cast<size_t>(n) + 1, 0);
  for (int m = 1; m <= n; ++m) {
    int128 s = int128(m) * L.coeff(m);
    for (int i = 1; i < m; ++i) s += int128(L.coeff(i)) * p[static_cast<size_t>(m - i)];
    p[static_cast<size_t>(m)] = -s;
  }
  return narrow(int128(ipow_checked(L.q, n)) + 1 - p[static_cast<size_t>(n)], "point count");
}

long long class_number(const LPolynomial& L) {
  int128 h = 0;
  for (long long v : L.c) h += v;
  if (h <= 0) fail("NonPositiveClassNumber", "L(1) = " + int128_to_string(h));
  // exact form of L(1/q) = h q^(-g): sum c_n q^(2g-n) = h q^g
  int128 lhs = 0;
  for (int n = 0; n <= 2 * L.genus; ++n) {
    lhs += int128(L.coeff(n)) * int128(ipow(L.q, 2 * L.genus - n));
  }
  if (lhs != h * int128(ipow(L.q, L.genus))) {
    fail("CorruptLPolynomial", "class number identity L(1/q) = h q^(-g) fails");
  }
  return narrow(h, "class number");
}

WeilReport check_weil_package(const LPolynomial& L) {
  WeilReport rep;
  rep.funceq = lpoly_basic_ok(L);
  if (L.genus == 0 || static_cast<int>(L.c.size()) <= 1) {
    rep.rh = true;
    rep.max_root_deviation = 0.0;
    return rep;
  }
  std::vector<Cplx> roots = lpoly_roots(L);
  const double sq = std::sqrt(static_cast<double>(L.q));
  // repeated roots scatter the iterates symmetrically; measure the modulus on
  // cluster means so those displacements cancel
  const double cluster_tol = 1e-6 / sq;
  std::vector<bool> used(roots.size(), false);
  double worst = 0.0;
  for (size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    Cplx sum = roots[i];
    int cnt = 1;
    used[i] = true;
    for (size_t j = i + 1; j < roots.size(); ++j) {
      if (!used[j] && std::abs(roots[j] - roots[i]) <= cluster_tol) {
        used[j] = true;
        sum += roots[j];
        ++cnt;
      }
    }
    Cplx mean = sum / static_cast<double>(cnt);
    worst = std::max(worst, std::abs(std::abs(mean) * sq - 1.0));
  }
  rep.max_root_deviation = worst;
  rep.rh = worst <= 1e-9;
  return rep;
}

std::vector<long long> effective_divisor_counts(const LPolynomial& L, int N) {
  std::vector<long long> b;
  b.reserve(static_cast<size_t>(N) + 1);
  int128 bm1 = 0, bm2 = 0;
  for (int n = 0; n <= N; ++n) {
    int128 bn = int128(L.coeff(n)) + int128(L.q + 1) * bm1 - int128(L.q) * bm2;
    if (bn < 0) fail("InternalCheck", "effective divisor count went negative");
    b.push_back(narrow(bn, "effective divisor count"));
    bm2 = bm1;
    bm1 = bn;
  }
  return b;
}

bool central_value_is_zero(const LPolynomial& L) {
  return central_zero_multiplicity(L) > 0;
}

int central_zero_multiplicity(const LPolynomial& L) {
  return multiplicity_by_division(L, false);
}

int negative_central_multiplicity(const LPolynomial& L) {
  return multiplicity_by_division(L, true);
}

bool zeta_is_pole(long long q, Cplx s) {
  PointShape ps = classify_u0(q, s);
  return ps.at_one || ps.at_qinv;
}

Cplx lpoly_eval(const LPolynomial& L, Cplx u) {
  std::complex<long double> v = eval_ld(L.c, std::complex<long double>(u.real(), u.imag()));
  return Cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

double lpoly_eval_abs(const LPolynomial& L, Cplx u) { return std::abs(lpoly_eval(L, u)); }

Cplx zeta_eval(const LPolynomial& L, Cplx s) {
  if (zeta_is_pole(L.q, s)) fail("PoleAt", "zeta has a pole at s = " + cplx_str(s));
  const long double lq = std::log(static_cast<long double>(L.q));
  std::complex<long double> sl(s.real(), s.imag());
  std::complex<long double> u = std::exp(-sl * lq);
  std::complex<long double> num = eval_ld(L.c, u);
  std::complex<long double> den =
      (std::complex<long double>(1, 0) - u) *
      (std::complex<long double>(1, 0) - static_cast<long double>(L.q) * u);
  std::complex<long double> v = num / den;
  return Cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

Cplx xi_eval(const LPolynomial& L, Cplx s) {
  Cplx z = zeta_eval(L, s);
  const long double lq = std::log(static_cast<long double>(L.q));
  std::complex<long double> sl(s.real(), s.imag());
  std::complex<long double> w =
      std::exp(static_cast<long double>(L.genus - 1) * sl * lq);
  std::complex<long double> v = w * std::complex<long double>(z.real(), z.imag());
  return Cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
}

std::vector<Cplx> lpoly_roots(const LPolynomial& L) {
  std::vector<double> c(L.c.begin(), L.c.end());
  return aberth_roots(c, 1.0 / std::sqrt(static_cast<double>(L.q)));
}

SpecialValue zeta_special_value(const LPolynomial& L, Cplx s) {
  const long double lq = std::log(static_cast<long double>(L.q));
  std::complex<long double> sl(s.real(), s.imag());
  std::complex<long double> u0 = std::exp(-sl * lq);

  PointShape ps = classify_u0(L.q, s);
  const double qmh = 1.0 / std::sqrt(static_cast<double>(L.q));

  auto deflate_once = [&u0](std::vector<std::complex<long double>>& t) {
    std::vector<std::complex<long double>> nxt(t.size() - 1);
    std::complex<long double> carry = 0;
    for (size_t j = t.size(); j-- > 1;) {
      carry = t[j] + u0 * carry;
      nxt[j - 1] = carry;
    }
    t = std::move(nxt);
  };
  auto eval_at_u0 = [&u0](const std::vector<std::complex<long double>>& t) {
    std::complex<long double> v = 0;
    for (size_t i = t.size(); i-- > 0;) v = v * u0 + t[i];
    return v;
  };
  auto scale_at_u0 = [&u0](const std::vector<std::complex<long double>>& t) {
    long double m = std::abs(u0), pw = 1.0L, s = 0;
    for (const auto& c : t) {
      s += std::abs(c) * pw;
      pw *= m;
    }
    return s;
  };

  std::vector<std::complex<long double>> t(L.c.begin(), L.c.end());
  int k = 0;
  bool exact = true;
  if (L.genus == 0) {
    k = 0;
  } else if (ps.central_pos || ps.central_neg) {
    k = ps.central_pos ? central_zero_multiplicity(L)
                       : negative_central_multiplicity(L);
    for (int pass = 0; pass < k; ++pass) deflate_once(t);
  } else if (std::abs(std::abs(Cplx(static_cast<double>(u0.real()),
                                    static_cast<double>(u0.imag()))) -
                      qmh) > 1e-9 * qmh) {
    k = 0;  // off the critical circle; no roots there
  } else {
    // on the circle but not at the exactly-handled points: repeated
    // deflation, treating u0 as a root while the value is negligible
    exact = false;
    while (t.size() >= 2) {
      if (std::abs(eval_at_u0(t)) > 1e-9L * scale_at_u0(t)) break;
      deflate_once(t);
      ++k;
    }
  }

  const int m = k - (ps.at_one ? 1 : 0) - (ps.at_qinv ? 1 : 0);
  std::complex<long double> lval = eval_at_u0(t);

  std::complex<long double> G = lval;
  G *= ps.at_one ? std::complex<long double>(-1, 0)
                 : std::complex<long double>(1, 0) / (std::complex<long double>(1, 0) - u0);
  G *= ps.at_qinv
           ? std::complex<long double>(-1.0L / static_cast<long double>(L.q), 0)
           : std::complex<long double>(1, 0) /
                 (std::complex<long double>(1, 0) - static_cast<long double>(L.q) * u0);

  std::complex<long double> base = -u0 * lq;
  std::complex<long double> lead(1, 0);
  for (int i = 0; i < std::abs(m); ++i) lead *= base;
  if (m < 0) lead = std::complex<long double>(1, 0) / lead;
  lead *= G;

  SpecialValue sv;
  sv.at = s;
  sv.order = m;
  sv.leading = Cplx(static_cast<double>(lead.real()), static_cast<double>(lead.imag()));
  sv.exact_order = exact;
  return sv;
}

}  // namespace ffzeta

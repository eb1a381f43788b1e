#include "ffzeta/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "ffzeta/numutil.hpp"

namespace ffzeta {

namespace {

// f with only T^(kp) terms -> g with g(T)^p = f
Poly pth_root_poly(const Poly& f) {
  const FieldSpec& F = *f.field();
  long long p = F.p();
  std::vector<uint64_t> out;
  out.resize(f.degree() / p + 1, 0);
  for (int i = 0; i <= f.degree(); ++i) {
    uint64_t c = f.coeff(i);
    if (c == 0) continue;
    if (i % p != 0) fail("DegreeMismatch", "polynomial is not a p-th power");
    out[i / p] = F.pth_root(c);
  }
  return Poly::from_ranks(f.field(), std::move(out));
}

struct PolyCmp {
  bool operator()(const Poly& a, const Poly& b) const { return a.less_than(b); }
};

using FactorMap = std::map<Poly, int, PolyCmp>;

Poly random_poly(const FieldRef& f, int deg_below, std::mt19937_64& rng) {
  std::vector<uint64_t> ranks(deg_below, 0);
  for (int i = 0; i < deg_below; ++i) {
    ranks[i] = rng() % static_cast<uint64_t>(f->q());
  }
  return Poly::from_ranks(f, std::move(ranks));
}

// equal-degree: g squarefree monic, all irreducible factors of degree d
void edf(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  const FieldRef& f = g.field();
  long long q = f->q();
  Poly one = Poly::constant(f, f->one());
  while (true) {
    Poly r = random_poly(f, g.degree(), rng);
    if (r.degree() < 1) continue;
    Poly u;
    if (f->p() == 2) {
      // additive trace splitting for characteristic 2
      int m = 0;
      long long qq = q;
      while (qq > 1) {
        qq /= 2;
        ++m;
      }
      Poly s(f);
      Poly t = poly_mod(r, g);
      for (int i = 0; i < m * d; ++i) {
        s = s + t;
        t = poly_mulmod(t, t, g);
      }
      u = poly_gcd(s, g);
    } else {
      uint128 exp = 1;
      for (int i = 0; i < d; ++i) exp *= static_cast<uint128>(q);
      exp = (exp - 1) / 2;
      Poly s = poly_powmod(r, exp, g);
      u = poly_gcd(s - one, g);
      if (u.is_constant() || u.degree() == g.degree()) {
        u = poly_gcd(s, g);  // r shared a factor with g
      }
    }
    if (!u.is_constant() && u.degree() < g.degree()) {
      edf(u, d, rng, out);
      edf(poly_div_exact(g, u), d, rng, out);
      return;
    }
  }
}

// distinct-degree on squarefree monic h
void ddf(const Poly& h, std::mt19937_64& rng, std::vector<Poly>& out) {
  const FieldRef& f = h.field();
  long long q = f->q();
  Poly rem = h;
  Poly x = Poly::monomial(f, 1, f->one());
  Poly w = poly_mod(x, rem);
  int d = 0;
  while (rem.degree() > 0 && 2 * (d + 1) <= rem.degree()) {
    ++d;
    w = poly_powmod(w, static_cast<uint128>(q), rem);
    Poly g = poly_gcd(w - x, rem);
    if (!g.is_constant()) {
      edf(g, d, rng, out);
      rem = poly_div_exact(rem, g);
      w = poly_mod(w, rem);
    }
  }
  if (rem.degree() > 0) out.push_back(rem);  // a single factor of large degree
}

void factor_into(const Poly& f, int mult, std::mt19937_64& rng, FactorMap& out) {
  if (f.degree() < 1) return;
  Poly d = f.derivative();
  if (d.is_zero()) {
    factor_into(pth_root_poly(f), mult * static_cast<int>(f.field()->p()), rng, out);
    return;
  }
  Poly g = poly_gcd(f, d);
  Poly h = poly_div_exact(f, g);  // squarefree, one copy of each prime with mult not divisible by p
  std::vector<Poly> primes;
  ddf(h, rng, primes);
  Poly rest = f;
  for (const Poly& P : primes) {
    int m = 0;
    while (true) {
      auto [quot, rem] = poly_divmod(rest, P);
      if (!rem.is_zero()) break;
      rest = quot;
      ++m;
    }
    out[P] += mult * m;
  }
  // what is left carries only primes with multiplicity divisible by p
  factor_into(rest, mult, rng, out);
}

}  // namespace

Poly Factorization::reconstruct() const {
  Poly acc = Poly::constant(field, unit_rank);
  for (const auto& [P, m] : factors) {
    for (int i = 0; i < m; ++i) acc = acc * P;
  }
  return acc;
}

Factorization factor(const Poly& f, uint64_t seed) {
  if (f.is_zero()) fail("ZeroPolynomial", "cannot factor the zero polynomial");
  Factorization result;
  result.field = f.field();
  result.unit_rank = f.leading();
  if (f.is_constant()) return result;
  std::mt19937_64 rng(seed);
  FactorMap fm;
  factor_into(f.monic(), 1, rng, fm);
  result.factors.assign(fm.begin(), fm.end());
  return result;
}

long long von_mangoldt(const Poly& f, uint64_t seed) {
  Factorization fc = factor(f, seed);
  if (fc.factors.size() != 1) return 0;
  return fc.factors[0].first.degree();
}

long long divisor_count(const Poly& f, uint64_t seed) {
  Factorization fc = factor(f, seed);
  long long n = 1;
  for (const auto& [P, m] : fc.factors) {
    (void)P;
    n *= (m + 1);
  }
  return n;
}

}  // namespace ffzeta

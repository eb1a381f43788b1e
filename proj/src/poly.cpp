#include "ffzeta/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "ffzeta/numutil.hpp"

namespace ffzeta {

void Poly::normalize() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::from_ranks(FieldRef f, std::vector<uint64_t> ranks) {
  Poly p(std::move(f));
  for (uint64_t r : ranks) {
    if (r >= static_cast<uint64_t>(p.field_->q())) fail("ParseError", "rank out of range");
  }
  p.c_ = std::move(ranks);
  p.normalize();
  return p;
}

Poly Poly::from_ints(const FieldRef& f, const std::vector<long long>& ints) {
  std::vector<uint64_t> ranks;
  ranks.reserve(ints.size());
  for (long long v : ints) ranks.push_back(f->from_int(v));
  return from_ranks(f, std::move(ranks));
}

Poly Poly::constant(const FieldRef& f, uint64_t rank) { return from_ranks(f, {rank}); }

Poly Poly::monomial(const FieldRef& f, int deg, uint64_t coeff_rank) {
  if (deg < 0) fail("DegreeMismatch", "negative monomial degree");
  std::vector<uint64_t> ranks(deg + 1, 0);
  ranks[deg] = coeff_rank;
  return from_ranks(f, std::move(ranks));
}

uint64_t Poly::eval(uint64_t t) const {
  const FieldSpec& F = *field_;
  uint64_t acc = 0;
  for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
    acc = F.add(F.mul(acc, t), c_[i]);
  }
  return acc;
}

namespace {
const FieldSpec& common(const Poly& a, const Poly& b) {
  if (!a.field() || !b.field()) fail("FieldMismatch", "polynomial without a field");
  if (!a.field()->same(*b.field())) fail("FieldMismatch", "polynomials over distinct fields");
  return *a.field();
}
}  // namespace

Poly Poly::operator+(const Poly& o) const {
  const FieldSpec& F = common(*this, o);
  Poly r(field_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.c_.size(); ++i) {
    uint64_t a = i < c_.size() ? c_[i] : 0;
    uint64_t b = i < o.c_.size() ? o.c_[i] : 0;
    r.c_[i] = F.add(a, b);
  }
  r.normalize();
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  const FieldSpec& F = common(*this, o);
  Poly r(field_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.c_.size(); ++i) {
    uint64_t a = i < c_.size() ? c_[i] : 0;
    uint64_t b = i < o.c_.size() ? o.c_[i] : 0;
    r.c_[i] = F.sub(a, b);
  }
  r.normalize();
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  const FieldSpec& F = common(*this, o);
  if (is_zero() || o.is_zero()) return Poly(field_);
  Poly r(field_);
  r.c_.assign(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) {
      if (o.c_[j] == 0) continue;
      r.c_[i + j] = F.add(r.c_[i + j], F.mul(c_[i], o.c_[j]));
    }
  }
  r.normalize();
  return r;
}

Poly Poly::operator-() const {
  Poly r(field_);
  r.c_ = c_;
  for (auto& x : r.c_) x = field_->neg(x);
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (!field_ || !o.field_) return c_.empty() && o.c_.empty() && field_ == o.field_;
  return field_->same(*o.field_) && c_ == o.c_;
}

Poly Poly::derivative() const {
  Poly r(field_);
  if (c_.size() <= 1) return r;
  const FieldSpec& F = *field_;
  r.c_.resize(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) {
    // multiply by i mod p
    uint64_t m = F.from_int(static_cast<long long>(i));
    r.c_[i - 1] = F.mul(c_[i], m);
  }
  r.normalize();
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) fail("ZeroPolynomial", "cannot monicize the zero polynomial");
  if (is_monic()) return *this;
  const FieldSpec& F = *field_;
  uint64_t inv = F.inv(c_.back());
  Poly r(field_);
  r.c_ = c_;
  for (auto& x : r.c_) x = F.mul(x, inv);
  return r;
}

Poly Poly::shift(int k) const {
  if (is_zero() || k == 0) return *this;
  Poly r(field_);
  r.c_.assign(c_.size() + k, 0);
  std::copy(c_.begin(), c_.end(), r.c_.begin() + k);
  return r;
}

bool Poly::less_than(const Poly& o) const {
  common(*this, o);
  int da = degree(), db = o.degree();
  if (da != db) return (da == kNegInf ? -1 : da) < (db == kNegInf ? -1 : db);
  for (int i = da; i >= 0; --i) {
    if (coeff(i) != o.coeff(i)) return coeff(i) < o.coeff(i);
  }
  return false;
}

long long Poly::monic_index() const {
  if (!is_monic()) fail("NonMonic", "monic_index needs a monic polynomial");
  long long q = field_->q();
  long long n = 0;
  for (int i = degree() - 1; i >= 0; --i) {
    n = n * q + static_cast<long long>(c_[i]);
  }
  return n;
}

std::string Poly::str() const {
  if (is_zero()) return "0";
  const FieldSpec& F = *field_;
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    uint64_t c = c_[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += F.format_element(c);
    } else {
      if (c != F.one()) out += F.format_element(c) + "*";
      out += "T";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

// ---- parsing ----

namespace {

// one coefficient: "13" or "[a0,a1,...]"
uint64_t parse_coeff(const FieldRef& f, const std::string& tok) {
  if (tok.empty()) fail("ParseError", "empty coefficient");
  if (tok[0] == '[') {
    if (tok.back() != ']') fail("ParseError", "unterminated coefficient vector '" + tok + "'");
    std::vector<long long> coords;
    std::string inner = tok.substr(1, tok.size() - 2);
    size_t pos = 0;
    while (pos <= inner.size()) {
      size_t comma = inner.find(',', pos);
      std::string piece =
          inner.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        size_t used = 0;
        coords.push_back(std::stoll(piece, &used));
        if (used != piece.size()) throw std::invalid_argument(piece);
      } catch (const std::exception&) {
        fail("ParseError", "bad coordinate '" + piece + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(coords.size()) != f->e()) {
      fail("ParseError", "coefficient vector '" + tok + "' needs " + std::to_string(f->e()) +
                             " coordinates");
    }
    for (long long c : coords) {
      if (c < 0 || c >= f->p()) fail("ParseError", "coordinate in '" + tok + "' outside [0, p)");
    }
    return f->from_coords(coords);
  }
  try {
    size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    if (v < 0 || v >= f->p()) {
      fail("ParseError",
           "coefficient " + tok + " outside [0, " + std::to_string(f->p()) + ")");
    }
    return f->from_int(v);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail("ParseError", "bad coefficient '" + tok + "'");
  }
}

}  // namespace

Poly Poly::parse(const FieldRef& f, const std::string& literal) {
  std::string s;
  for (char ch : literal) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) fail("ParseError", "empty polynomial literal");

  // split on '+' at bracket depth zero
  std::vector<std::string> terms;
  std::string cur;
  int depth = 0;
  for (char ch : s) {
    if (ch == '[') ++depth;
    if (ch == ']') --depth;
    if (ch == '+' && depth == 0) {
      terms.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  terms.push_back(cur);

  const FieldSpec& F = *f;
  std::vector<uint64_t> coeffs;
  for (const std::string& term : terms) {
    if (term.empty()) fail("ParseError", "empty term in '" + literal + "'");
    uint64_t coeff = F.one();
    int deg = 0;
    size_t tpos = term.find('T');
    if (tpos == std::string::npos) {
      coeff = parse_coeff(f, term);
      deg = 0;
    } else {
      std::string cpart = term.substr(0, tpos);
      if (!cpart.empty()) {
        if (cpart.back() != '*') fail("ParseError", "expected '*' before T in '" + term + "'");
        coeff = parse_coeff(f, cpart.substr(0, cpart.size() - 1));
      }
      std::string epart = term.substr(tpos + 1);
      if (epart.empty()) {
        deg = 1;
      } else {
        if (epart[0] != '^') fail("ParseError", "expected '^' after T in '" + term + "'");
        try {
          size_t used = 0;
          deg = std::stoi(epart.substr(1), &used);
          if (used != epart.size() - 1) throw std::invalid_argument(epart);
        } catch (const std::exception&) {
          fail("ParseError", "bad exponent in '" + term + "'");
        }
        if (deg < 0) fail("ParseError", "negative exponent in '" + term + "'");
        if (deg > 4096) fail("ParseError", "exponent too large");
      }
    }
    if (static_cast<size_t>(deg) >= coeffs.size()) coeffs.resize(deg + 1, 0);
    coeffs[deg] = F.add(coeffs[deg], coeff);
  }
  return from_ranks(f, std::move(coeffs));
}

// ---- division, gcd, modular arithmetic ----

std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  const FieldSpec& F = common(a, b);
  if (b.is_zero()) fail("DivisionByZero", "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly(a.field()), a};
  uint64_t lead_inv = F.inv(b.leading());
  std::vector<uint64_t> rem(a.ranks());
  int db = b.degree();
  std::vector<uint64_t> quot(a.degree() - db + 1, 0);
  for (int i = a.degree(); i >= db; --i) {
    uint64_t c = rem[i];
    if (c == 0) continue;
    uint64_t qc = F.mul(c, lead_inv);
    quot[i - db] = qc;
    for (int j = 0; j <= db; ++j) {
      rem[i - db + j] = F.sub(rem[i - db + j], F.mul(qc, b.coeff(j)));
    }
  }
  return {Poly::from_ranks(a.field(), std::move(quot)), Poly::from_ranks(a.field(), std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& b) { return poly_divmod(a, b).second; }

Poly poly_div_exact(const Poly& a, const Poly& b) {
  auto [q, r] = poly_divmod(a, b);
  if (!r.is_zero()) fail("DegreeMismatch", "division is not exact");
  return q;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  common(a, b);
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = poly_mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  if (x.is_zero()) return x;
  return x.monic();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m) {
  return poly_mod(a * b, m);
}

Poly poly_powmod(const Poly& a, uint128 exp, const Poly& m) {
  Poly result = Poly::constant(a.field(), a.field()->one());
  result = poly_mod(result, m);
  Poly base = poly_mod(a, m);
  while (exp) {
    if (exp & 1) result = poly_mulmod(result, base, m);
    base = poly_mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

Poly poly_compose(const Poly& f, const Poly& g) {
  common(f, g);
  Poly acc(f.field());
  for (int i = f.degree(); i >= 0; --i) {
    acc = acc * g + Poly::constant(f.field(), f.coeff(i));
  }
  return acc;
}

// ---- predicates ----

bool is_squarefree(const Poly& f) {
  if (f.is_zero()) fail("ZeroPolynomial", "squarefree test on zero");
  if (f.is_constant()) return true;
  Poly d = f.derivative();
  if (d.is_zero()) return false;  // p-th power
  return poly_gcd(f, d).is_constant();
}

bool is_irreducible(const Poly& f) {
  if (f.is_zero()) fail("ZeroPolynomial", "irreducibility test on zero");
  int d = f.degree();
  if (d < 1) return false;
  Poly g = f.is_monic() ? f : f.monic();
  if (d == 1) return true;
  long long q = f.field()->q();
  // exponents q^k must stay well inside 128 bits
  if (d * std::log2(static_cast<double>(q)) > 100.0) {
    fail("BudgetExceeded", "irreducibility test degree too large");
  }
  Poly x = Poly::monomial(f.field(), 1, f.field()->one());
  std::vector<int> prime_divs;
  int n = d;
  for (int r = 2; r * r <= n; ++r) {
    if (n % r == 0) {
      prime_divs.push_back(r);
      while (n % r == 0) n /= r;
    }
  }
  if (n > 1) prime_divs.push_back(n);
  auto qpow = [&](int k) {
    uint128 e = 1;
    for (int i = 0; i < k; ++i) e *= static_cast<uint128>(q);
    return e;
  };
  for (int r : prime_divs) {
    Poly xp = poly_powmod(x, qpow(d / r), g);
    if (!poly_gcd(xp - x, g).is_constant()) return false;
  }
  Poly xp = poly_powmod(x, qpow(d), g);
  return (xp - x).is_zero();
}

// ---- enumeration ----

Poly monic_by_index(const FieldRef& f, int n, long long N) {
  if (n < 0) fail("DegreeMismatch", "negative degree");
  long long q = f->q();
  std::vector<uint64_t> ranks(n + 1, 0);
  ranks[n] = f->one();
  long long m = N;
  for (int i = 0; i < n; ++i) {
    ranks[i] = static_cast<uint64_t>(m % q);
    m /= q;
  }
  return Poly::from_ranks(f, std::move(ranks));
}

void for_each_monic(const FieldRef& f, int n,
                    const std::function<void(long long, const Poly&)>& fn, long long budget) {
  if (n < 0) fail("DegreeMismatch", "negative degree");
  long long total = 1;
  for (int i = 0; i < n; ++i) {
    total *= f->q();
    if (total > budget) {
      fail("BudgetExceeded", "monic enumeration of degree " + std::to_string(n) +
                                 " over F_" + f->q_literal() + " exceeds budget");
    }
  }
  for (long long N = 0; N < total; ++N) fn(N, monic_by_index(f, n, N));
}

std::vector<Poly> enumerate_monic(const FieldRef& f, int n, MonicFilter filter, long long budget) {
  std::vector<Poly> out;
  for_each_monic(
      f, n,
      [&](long long, const Poly& p) {
        switch (filter) {
          case MonicFilter::All:
            out.push_back(p);
            break;
          case MonicFilter::Squarefree:
            if (is_squarefree(p)) out.push_back(p);
            break;
          case MonicFilter::Irreducible:
            if (n >= 1 && is_irreducible(p)) out.push_back(p);
            break;
        }
      },
      budget);
  return out;
}

// ---- counting ----

int mobius_int(int n) {
  if (n < 1) fail("DegreeMismatch", "mobius of non-positive integer");
  int result = 1;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      result = -result;
    }
  }
  if (n > 1) result = -result;
  return result;
}

long long irreducible_count(long long q, int d) {
  if (d < 1) fail("DegreeMismatch", "irreducible_count needs degree >= 1");
  int128 sum = 0;
  for (int e = 1; e <= d; ++e) {
    if (d % e != 0) continue;
    int mu = mobius_int(e);
    if (mu == 0) continue;
    int128 term = 1;
    for (int i = 0; i < d / e; ++i) {
      term *= q;
      if (term > (int128(1) << 100)) fail("Overflow", "irreducible_count overflow");
    }
    sum += mu * term;
  }
  if (sum % d != 0) fail("Overflow", "irreducible_count inexact division");
  int128 res = sum / d;
  if (res > int128(INT64_MAX)) fail("Overflow", "irreducible_count out of range");
  return static_cast<long long>(res);
}

long long squarefree_count(long long q, int n) {
  if (n < 0) fail("DegreeMismatch", "negative degree");
  if (n < 2) return ipow_checked(q, n, "squarefree_count");
  return ipow_checked(q, n, "squarefree_count") - ipow_checked(q, n - 1, "squarefree_count");
}

}  // namespace ffzeta

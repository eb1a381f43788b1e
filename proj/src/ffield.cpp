#include "ffzeta/ffield.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <tuple>

#include "ffzeta/numutil.hpp"

namespace ffzeta {

namespace {

constexpr int kMaxExt = 64;  // q = p^e < 2^62 caps e well below this

// ---- small F_p[x] helpers on coefficient vectors (constant term first) ----

using Vec = std::vector<long long>;

void fp_norm(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long long mod_inv(long long a, long long p) {
  long long t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    long long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) fail("DivisionByZero", "non-invertible residue");
  return ((t % p) + p) % p;
}

// a mod m, m monic
Vec fp_rem(Vec a, const Vec& m, long long p) {
  fp_norm(a);
  int dm = static_cast<int>(m.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= dm) {
    long long c = a.back();
    int shift = static_cast<int>(a.size()) - 1 - dm;
    if (c != 0) {
      for (int i = 0; i < dm; ++i) {
        a[shift + i] = ((a[shift + i] - c * m[i]) % p + p) % p;
      }
    }
    a.pop_back();
    fp_norm(a);
  }
  return a;
}

Vec fp_mulmod(const Vec& a, const Vec& b, const Vec& m, long long p) {
  if (a.empty() || b.empty()) return {};
  Vec c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) {
      c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
  }
  return fp_rem(std::move(c), m, p);
}

Vec fp_monic(Vec a, long long p) {
  fp_norm(a);
  if (a.empty()) return a;
  long long inv = mod_inv(a.back(), p);
  for (auto& c : a) c = c * inv % p;
  return a;
}

Vec fp_gcd(Vec a, Vec b, long long p) {
  fp_norm(a);
  fp_norm(b);
  while (!b.empty()) {
    Vec r = fp_rem(a, fp_monic(b, p), p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(a, p);
}

// x^n mod m
Vec fp_powmod_x(unsigned long long n, const Vec& m, long long p) {
  Vec result{1};
  Vec base{0, 1};
  base = fp_rem(base, m, p);
  while (n) {
    if (n & 1) result = fp_mulmod(result, base, m, p);
    base = fp_mulmod(base, base, m, p);
    n >>= 1;
  }
  return result;
}

// Rabin test: f (monic, degree d >= 1) irreducible over F_p iff
// x^(p^d) = x mod f and gcd(x^(p^(d/r)) - x, f) = 1 for each prime r | d.
bool fp_irreducible(const Vec& f, long long p) {
  int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  std::vector<int> prime_divs;
  int n = d;
  for (int r = 2; r * r <= n; ++r) {
    if (n % r == 0) {
      prime_divs.push_back(r);
      while (n % r == 0) n /= r;
    }
  }
  if (n > 1) prime_divs.push_back(n);
  for (int r : prime_divs) {
    unsigned long long exp = static_cast<unsigned long long>(ipow_checked(p, d / r, "modulus test"));
    Vec xp = fp_powmod_x(exp, f, p);
    // xp - x
    Vec diff = xp;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    fp_norm(diff);
    Vec g = fp_gcd(diff, f, p);
    if (!(g.size() == 1 && g[0] == 1)) return false;
  }
  unsigned long long exp = static_cast<unsigned long long>(ipow_checked(p, d, "modulus test"));
  Vec xp = fp_powmod_x(exp, f, p);
  Vec diff = xp;
  if (diff.size() < 2) diff.resize(2, 0);
  diff[1] = ((diff[1] - 1) % p + p) % p;
  fp_norm(diff);
  return diff.empty();
}

// Minimal literal parser for a polynomial over F_p: terms "c", "T", "T^k",
// "c*T", "c*T^k" joined by '+', whitespace ignored, coefficients in [0, p).
Vec parse_fp_literal(const std::string& lit, long long p) {
  std::string s;
  for (char ch : lit) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) fail("ParseError", "empty polynomial literal");
  Vec coeffs;
  size_t pos = 0;
  while (pos <= s.size()) {
    size_t plus = s.find('+', pos);
    std::string term = s.substr(pos, plus == std::string::npos ? std::string::npos : plus - pos);
    if (term.empty()) fail("ParseError", "empty term in polynomial literal '" + lit + "'");
    long long coeff = 1;
    int deg = 0;
    size_t tpos = term.find('T');
    if (tpos == std::string::npos) {
      // bare constant
      deg = 0;
      try {
        size_t used = 0;
        coeff = std::stoll(term, &used);
        if (used != term.size()) throw std::invalid_argument(term);
      } catch (const std::exception&) {
        fail("ParseError", "bad constant term '" + term + "'");
      }
    } else {
      std::string cpart = term.substr(0, tpos);
      if (!cpart.empty()) {
        if (cpart.back() != '*') fail("ParseError", "expected '*' before T in '" + term + "'");
        cpart.pop_back();
        try {
          size_t used = 0;
          coeff = std::stoll(cpart, &used);
          if (used != cpart.size()) throw std::invalid_argument(cpart);
        } catch (const std::exception&) {
          fail("ParseError", "bad coefficient '" + cpart + "'");
        }
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
      }
    }
    if (coeff < 0 || coeff >= p) {
      fail("ParseError", "coefficient " + std::to_string(coeff) + " outside [0, " +
                             std::to_string(p) + ")");
    }
    if (static_cast<size_t>(deg) >= coeffs.size()) coeffs.resize(deg + 1, 0);
    coeffs[deg] = (coeffs[deg] + coeff) % p;
    if (plus == std::string::npos) break;
    pos = plus + 1;
  }
  fp_norm(coeffs);
  return coeffs;
}

std::string render_fp_literal(const Vec& coeffs) {
  if (coeffs.empty()) return "0";
  std::string out;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    long long c = coeffs[i];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c);
    } else {
      if (c != 1) out += std::to_string(c) + "*";
      out += "T";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  if (out.empty()) out = "0";
  return out;
}

}  // namespace

// ---- construction and registry ----

class FieldRegistry {
 public:
  static FieldRef get(long long p, int e, Vec modulus) {
    static FieldRegistry reg;
    std::lock_guard<std::mutex> lock(reg.mu_);
    auto key = std::make_tuple(p, e, modulus);
    auto it = reg.cache_.find(key);
    if (it != reg.cache_.end()) return it->second;
    FieldRef f = build(p, e, std::move(modulus));
    // cache under the requested key and the resolved-modulus key, so a
    // default-modulus request and the equivalent explicit one share a spec
    reg.cache_[key] = f;
    reg.cache_[std::make_tuple(p, e, f->modulus())] = f;
    return f;
  }

 private:
  static FieldRef build(long long p, int e, Vec modulus);

  std::mutex mu_;
  std::map<std::tuple<long long, int, Vec>, FieldRef> cache_;
};

FieldRef FieldRegistry::build(long long p, int e, Vec modulus) {
  if (!is_prime_i64(p)) fail("NonPrime", std::to_string(p) + " is not prime");
  if (p >= (1LL << 31)) fail("Overflow", "p must be below 2^31");
  if (e < 1 || e >= kMaxExt) fail("DegreeMismatch", "extension degree must be in [1, 64)");
  long long q = ipow_checked(p, e, "field size");

  auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
  spec->p_ = p;
  spec->e_ = e;
  spec->q_ = q;

  if (modulus.empty()) {
    if (e == 1) {
      modulus = {0, 1};  // T
    } else {
      // first monic irreducible of degree e in canonical enumeration order
      long long total = q;
      for (long long n = 0; n < total; ++n) {
        Vec f(e + 1, 0);
        f[e] = 1;
        long long m = n;
        for (int i = 0; i < e; ++i) {
          f[i] = m % p;
          m /= p;
        }
        if (fp_irreducible(f, p)) {
          modulus = std::move(f);
          break;
        }
      }
    }
  } else {
    for (long long c : modulus) {
      if (c < 0 || c >= p) fail("ParseError", "modulus coefficient outside [0, p)");
    }
    Vec copy = modulus;
    fp_norm(copy);
    if (static_cast<int>(copy.size()) - 1 != e || copy.back() != 1) {
      fail("DegreeMismatch", "modulus must be monic of degree " + std::to_string(e));
    }
    if (e == 1) {
      // any monic linear works; canonicalize anyway
    } else if (!fp_irreducible(copy, p)) {
      fail("ReducibleModulus", "modulus " + render_fp_literal(copy) + " is reducible over F_" +
                                   std::to_string(p));
    }
    modulus = std::move(copy);
  }

  spec->modulus_ = modulus;
  spec->powp_.resize(e + 1);
  spec->powp_[0] = 1;
  for (int i = 1; i <= e; ++i) spec->powp_[i] = spec->powp_[i - 1] * p;

  if (e > 1) {
    // rows for T^(e+k), k = 0..e-2, reduced mod modulus
    spec->red_rows_.assign(static_cast<size_t>(e - 1) * e, 0);
    Vec row(e, 0);
    for (int i = 0; i < e; ++i) row[i] = ((p - modulus[i]) % p);  // T^e
    // note: row above is T^e mod modulus only when k = 0; build iteratively
    Vec cur = row;
    for (int k = 0; k < e - 1; ++k) {
      if (k > 0) {
        // cur = T * prev mod modulus
        Vec next(e, 0);
        long long carry = cur[e - 1];
        for (int i = e - 1; i >= 1; --i) next[i] = cur[i - 1];
        next[0] = 0;
        if (carry != 0) {
          for (int i = 0; i < e; ++i) {
            next[i] = (next[i] + carry * row[i]) % p;
          }
        }
        cur = std::move(next);
      }
      for (int i = 0; i < e; ++i) spec->red_rows_[static_cast<size_t>(k) * e + i] = cur[i];
    }
  }

  spec->one_ = spec->encode_one();
  return spec;
}

FieldRef FieldSpec::make(long long p, int e) { return FieldRegistry::get(p, e, {}); }

FieldRef FieldSpec::make(long long p, int e, const std::vector<long long>& modulus) {
  return FieldRegistry::get(p, e, modulus);
}

FieldRef FieldSpec::parse_q(const std::string& literal) {
  std::string s = literal;
  if (s.rfind("q=", 0) == 0) s = s.substr(2);
  if (s.empty()) fail("ParseError", "empty field literal");
  size_t caret = s.find('^');
  long long p = 0;
  int e = 1;
  try {
    if (caret == std::string::npos) {
      size_t used = 0;
      long long q = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      factor_prime_power(q, p, e);
    } else {
      size_t used = 0;
      p = std::stoll(s.substr(0, caret), &used);
      if (used != caret) throw std::invalid_argument(s);
      e = std::stoi(s.substr(caret + 1), &used);
      if (used != s.size() - caret - 1) throw std::invalid_argument(s);
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail("ParseError", "bad field literal '" + literal + "'");
  }
  return make(p, e);
}

FieldRef field_from_q(const std::string& q_literal, const std::string& modulus_literal) {
  FieldRef base = FieldSpec::parse_q(q_literal);
  if (modulus_literal.empty()) return base;
  Vec m = parse_fp_literal(modulus_literal, base->p());
  return FieldSpec::make(base->p(), base->e(), m);
}

// ---- element codec ----

void FieldSpec::decode(uint64_t rank, long long* a) const {
  for (int i = 0; i < e_; ++i) {
    a[i] = static_cast<long long>(rank / static_cast<uint64_t>(powp_[e_ - 1 - i])) % p_;
  }
}

uint64_t FieldSpec::encode(const long long* a) const {
  uint64_t r = 0;
  for (int i = 0; i < e_; ++i) {
    r += static_cast<uint64_t>(a[i]) * static_cast<uint64_t>(powp_[e_ - 1 - i]);
  }
  return r;
}

// one_ initialization needs encode; called from the registry builder
// (kept as a member so it can see private state).
uint64_t FieldSpec::encode_one() {
  long long a[kMaxExt] = {0};
  a[0] = 1;
  uint64_t one = encode(a);
  a[0] = p_ - 1;
  neg_one_ = encode(a);
  return one;
}

// ---- arithmetic ----

uint64_t FieldSpec::add(uint64_t x, uint64_t y) const {
  if (e_ == 1) {
    uint64_t s = x + y;
    return s >= static_cast<uint64_t>(p_) ? s - p_ : s;
  }
  long long a[kMaxExt], b[kMaxExt], c[kMaxExt];
  decode(x, a);
  decode(y, b);
  for (int i = 0; i < e_; ++i) {
    long long s = a[i] + b[i];
    c[i] = s >= p_ ? s - p_ : s;
  }
  return encode(c);
}

uint64_t FieldSpec::sub(uint64_t x, uint64_t y) const {
  if (e_ == 1) {
    return x >= y ? x - y : x + p_ - y;
  }
  long long a[kMaxExt], b[kMaxExt], c[kMaxExt];
  decode(x, a);
  decode(y, b);
  for (int i = 0; i < e_; ++i) {
    long long s = a[i] - b[i];
    c[i] = s < 0 ? s + p_ : s;
  }
  return encode(c);
}

uint64_t FieldSpec::neg(uint64_t x) const { return sub(0, x); }

uint64_t FieldSpec::mul(uint64_t x, uint64_t y) const {
  if (e_ == 1) {
    return static_cast<uint64_t>(static_cast<long long>(x) * static_cast<long long>(y) % p_);
  }
  return mul_ext(x, y);
}

uint64_t FieldSpec::mul_ext(uint64_t x, uint64_t y) const {
  long long a[kMaxExt], b[kMaxExt];
  decode(x, a);
  decode(y, b);
  long long conv[2 * kMaxExt] = {0};
  for (int i = 0; i < e_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < e_; ++j) {
      conv[i + j] = (conv[i + j] + a[i] * b[j]) % p_;
    }
  }
  for (int k = 2 * e_ - 2; k >= e_; --k) {
    long long c = conv[k];
    if (c == 0) continue;
    conv[k] = 0;
    const long long* row = &red_rows_[static_cast<size_t>(k - e_) * e_];
    for (int i = 0; i < e_; ++i) {
      conv[i] = (conv[i] + c * row[i]) % p_;
    }
  }
  return encode(conv);
}

uint64_t FieldSpec::pow(uint64_t x, unsigned long long n) const {
  uint64_t result = one_;
  uint64_t base = x;
  while (n) {
    if (n & 1) result = mul(result, base);
    base = mul(base, base);
    n >>= 1;
  }
  return result;
}

uint64_t FieldSpec::inv(uint64_t x) const {
  if (x == 0) fail("DivisionByZero", "inverse of zero field element");
  if (e_ == 1) {
    return static_cast<uint64_t>(mod_inv(static_cast<long long>(x), p_));
  }
  return inv_ext(x);
}

uint64_t FieldSpec::inv_ext(uint64_t x) const {
  // extended Euclid in F_p[T] against the modulus
  long long buf[kMaxExt];
  decode(x, buf);
  Vec a(buf, buf + e_);
  fp_norm(a);
  Vec r0 = modulus_, r1 = a;
  Vec t0 = {}, t1 = {1};
  while (!r1.empty()) {
    // divide r0 by r1 (monicized), tracking the Bezout coefficient
    long long lead_inv = mod_inv(r1.back(), p_);
    size_t qsize = r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 0;
    Vec q(qsize, 0);
    Vec rem = r0;
    while (rem.size() >= r1.size() && !rem.empty()) {
      long long c = rem.back() * lead_inv % p_;
      int shift = static_cast<int>(rem.size() - r1.size());
      q[shift] = c;
      for (size_t i = 0; i < r1.size(); ++i) {
        rem[shift + i] = ((rem[shift + i] - c * r1[i]) % p_ + p_) % p_;
      }
      fp_norm(rem);
      if (rem.empty()) break;
    }
    // t2 = t0 - q * t1
    Vec qt(q.size() + t1.size(), 0);
    if (!t1.empty()) {
      for (size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (size_t j = 0; j < t1.size(); ++j) {
          qt[i + j] = (qt[i + j] + q[i] * t1[j]) % p_;
        }
      }
    }
    fp_norm(qt);
    Vec t2(std::max(t0.size(), qt.size()), 0);
    for (size_t i = 0; i < t0.size(); ++i) t2[i] = t0[i];
    for (size_t i = 0; i < qt.size(); ++i) t2[i] = ((t2[i] - qt[i]) % p_ + p_) % p_;
    fp_norm(t2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  // r0 is the gcd (a nonzero constant since the modulus is irreducible)
  if (r0.size() != 1) fail("DivisionByZero", "element not invertible");
  long long scale = mod_inv(r0[0], p_);
  long long out[kMaxExt] = {0};
  for (size_t i = 0; i < t0.size(); ++i) out[i] = t0[i] * scale % p_;
  return encode(out);
}

uint64_t FieldSpec::div(uint64_t x, uint64_t y) const { return mul(x, inv(y)); }

int FieldSpec::square_class(uint64_t x) const {
  if (p_ == 2) fail("EvenCharacteristic", "square classes need odd q");
  if (x == 0) return 0;
  uint64_t r = pow(x, static_cast<unsigned long long>((q_ - 1) / 2));
  return r == one_ ? 1 : -1;
}

uint64_t FieldSpec::pth_root(uint64_t x) const {
  if (e_ == 1) return x;
  // x -> x^(p^(e-1)); inverse of Frobenius
  return pow(x, static_cast<unsigned long long>(powp_[e_ - 1]));
}

uint64_t FieldSpec::from_int(long long v) const {
  long long r = v % p_;
  if (r < 0) r += p_;
  long long a[kMaxExt] = {0};
  a[0] = r;
  return encode(a);
}

std::vector<long long> FieldSpec::coords(uint64_t rank) const {
  long long a[kMaxExt];
  decode(rank, a);
  return std::vector<long long>(a, a + e_);
}

uint64_t FieldSpec::from_coords(const std::vector<long long>& c) const {
  if (static_cast<int>(c.size()) != e_) fail("DegreeMismatch", "wrong coordinate count");
  long long a[kMaxExt];
  for (int i = 0; i < e_; ++i) {
    if (c[i] < 0 || c[i] >= p_) fail("ParseError", "coordinate outside [0, p)");
    a[i] = c[i];
  }
  return encode(a);
}

std::string FieldSpec::format_element(uint64_t rank) const {
  if (e_ == 1) return std::to_string(rank);
  long long a[kMaxExt];
  decode(rank, a);
  std::string out = "[";
  for (int i = 0; i < e_; ++i) {
    if (i) out += ",";
    out += std::to_string(a[i]);
  }
  out += "]";
  return out;
}

std::string FieldSpec::q_literal() const {
  if (e_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "^" + std::to_string(e_);
}

std::string FieldSpec::modulus_literal() const { return render_fp_literal(modulus_); }

// ---- element-level API ----

const FieldSpec& common_field(const FieldElement& a, const FieldElement& b) {
  if (!a.field || !b.field) fail("FieldMismatch", "element without a field");
  if (!a.field->same(*b.field)) {
    fail("FieldMismatch", "elements of F_" + a.field->q_literal() + " and F_" +
                              b.field->q_literal() + " cannot mix");
  }
  return *a.field;
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
  const FieldSpec& f = common_field(a, b);
  return {f.add(a.rank, b.rank), a.field};
}
FieldElement fe_sub(const FieldElement& a, const FieldElement& b) {
  const FieldSpec& f = common_field(a, b);
  return {f.sub(a.rank, b.rank), a.field};
}
FieldElement fe_mul(const FieldElement& a, const FieldElement& b) {
  const FieldSpec& f = common_field(a, b);
  return {f.mul(a.rank, b.rank), a.field};
}
FieldElement fe_div(const FieldElement& a, const FieldElement& b) {
  const FieldSpec& f = common_field(a, b);
  return {f.div(a.rank, b.rank), a.field};
}
FieldElement fe_neg(const FieldElement& a) { return {a.field->neg(a.rank), a.field}; }
FieldElement fe_inv(const FieldElement& a) { return {a.field->inv(a.rank), a.field}; }
FieldElement fe_pow(const FieldElement& a, unsigned long long n) {
  return {a.field->pow(a.rank, n), a.field};
}
int fe_is_square(const FieldElement& a) { return a.field->square_class(a.rank); }

std::vector<FieldElement> fe_enumerate(const FieldRef& f) {
  std::vector<FieldElement> out;
  out.reserve(static_cast<size_t>(f->q()));
  for (long long r = 0; r < f->q(); ++r) {
    out.emplace_back(static_cast<uint64_t>(r), f);
  }
  return out;
}

}  // namespace ffzeta

#include "ffzeta/sieve.hpp"

#include <algorithm>

#include "ffzeta/numutil.hpp"

namespace ffzeta {

MonicSieve::MonicSieve(FieldRef field, int max_deg, long long budget)
    : field_(std::move(field)), max_deg_(max_deg) {
  if (max_deg < 0) fail("DegreeMismatch", "negative sieve degree");
  long long q = field_->q();
  long long total = 0;
  long long qd = 1;
  for (int d = 0; d <= max_deg; ++d) {
    total += qd;
    if (total > budget) {
      fail("BudgetExceeded", "sieve to degree " + std::to_string(max_deg) + " over F_" +
                                 field_->q_literal() + " exceeds budget");
    }
    if (d < max_deg) qd *= q;
  }

  entries_.resize(max_deg + 1);
  qd = 1;
  for (int d = 0; d <= max_deg; ++d) {
    entries_[d].assign(qd, Entry{});
    if (d < max_deg) qd *= q;
  }
  deg_first_.assign(max_deg + 2, 0);

  // discover primes in ascending (degree, index) order; mark each prime's
  // multiples across all reachable degrees, keeping the smallest-prime-factor
  // property because earlier primes mark first
  for (int d = 1; d <= max_deg; ++d) {
    deg_first_[d] = static_cast<int>(primes_.size());
    long long count_d = static_cast<long long>(entries_[d].size());
    for (long long N = 0; N < count_d; ++N) {
      if (entries_[d][N].spf >= 0) continue;
      int id = static_cast<int>(primes_.size());
      Poly P = monic_by_index(field_, d, N);
      primes_.push_back(P);
      prime_deg_.push_back(d);
      for (int m = 0; d + m <= max_deg; ++m) {
        long long count_m = static_cast<long long>(entries_[m].size());
        for (long long g = 0; g < count_m; ++g) {
          Poly gp = monic_by_index(field_, m, g);
          Poly f = P * gp;
          long long fi = f.monic_index();
          Entry& e = entries_[d + m][fi];
          if (e.spf < 0) {
            e.spf = id;
            e.quot = g;
          }
        }
      }
    }
  }
  deg_first_[max_deg + 1] = static_cast<int>(primes_.size());
  for (int d = max_deg + 1; d < static_cast<int>(deg_first_.size()); ++d) {
    deg_first_[d] = static_cast<int>(primes_.size());
  }

  // count check against the Mobius closed form
  for (int d = 1; d <= max_deg; ++d) {
    auto [a, b] = primes_of_degree(d);
    if (b - a != irreducible_count(q, d)) {
      fail("Overflow", "sieve prime count mismatch at degree " + std::to_string(d));
    }
  }

  char_tables_.resize(primes_.size());
}

std::pair<int, int> MonicSieve::primes_of_degree(int d) const {
  if (d < 1 || d > max_deg_) return {0, 0};
  return {deg_first_[d], deg_first_[d + 1]};
}

bool MonicSieve::squarefree_idx(int deg, long long N) const {
  int prev = -1;
  int d = deg;
  long long n = N;
  while (d > 0) {
    const Entry& e = entries_[d][n];
    if (e.spf == prev) return false;
    prev = e.spf;
    d -= prime_deg_[e.spf];
    n = e.quot;
  }
  return true;
}

void MonicSieve::factor_idx(int deg, long long N, const std::function<void(int, int)>& fn) const {
  int d = deg;
  long long n = N;
  int cur = -1;
  int mult = 0;
  while (d > 0) {
    const Entry& e = entries_[d][n];
    if (e.spf == cur) {
      ++mult;
    } else {
      if (cur >= 0) fn(cur, mult);
      cur = e.spf;
      mult = 1;
    }
    d -= prime_deg_[e.spf];
    n = e.quot;
  }
  if (cur >= 0) fn(cur, mult);
}

Factorization MonicSieve::factorization_idx(int deg, long long N) const {
  Factorization fc;
  fc.field = field_;
  fc.unit_rank = field_->one();
  factor_idx(deg, N, [&](int id, int m) { fc.factors.emplace_back(primes_[id], m); });
  return fc;
}

long long MonicSieve::residue_index(const Poly& r, int d) const {
  long long q = field_->q();
  long long idx = 0;
  for (int i = d - 1; i >= 0; --i) {
    idx = idx * q + static_cast<long long>(r.coeff(i));
  }
  return idx;
}

void MonicSieve::ensure_char_tables(int d) {
  if (field_->p() == 2) fail("EvenCharacteristic", "character tables need odd q");
  if (d > max_deg_) fail("DegreeMismatch", "char tables beyond sieve degree");
  if (d <= char_tables_built_deg_) return;
  long long q = field_->q();
  for (int deg = char_tables_built_deg_ + 1; deg <= d; ++deg) {
    auto [first, last] = primes_of_degree(deg);
    long long size = 1;
    for (int i = 0; i < deg; ++i) size *= q;
    for (int id = first; id < last; ++id) {
      const Poly& P = primes_[id];
      std::vector<int8_t> table(size, -1);
      table[0] = 0;
      // mark u^2 mod P for every nonzero residue u
      std::vector<uint64_t> digits(deg, 0);
      for (long long u = 1; u < size; ++u) {
        // odometer increment of the residue digits
        for (int i = 0; i < deg; ++i) {
          if (++digits[i] < static_cast<uint64_t>(q)) break;
          digits[i] = 0;
        }
        Poly up = Poly::from_ranks(field_, std::vector<uint64_t>(digits));
        Poly sq = poly_mulmod(up, up, P);
        table[residue_index(sq, deg)] = 1;
      }
      char_tables_[id] = std::move(table);
    }
  }
  char_tables_built_deg_ = d;
}

std::vector<int8_t> MonicSieve::chi_of(const Poly& D, int max_prime_deg) const {
  if (max_prime_deg > char_tables_built_deg_) {
    fail("DegreeMismatch", "char tables not built to requested degree");
  }
  auto [first0, last] = primes_of_degree(max_prime_deg);
  (void)first0;
  std::vector<int8_t> chi(last, 0);
  for (int d = 1; d <= max_prime_deg; ++d) {
    auto [a, b] = primes_of_degree(d);
    for (int id = a; id < b; ++id) {
      Poly r = poly_mod(D, primes_[id]);
      chi[id] = char_tables_[id][residue_index(r, d)];
    }
  }
  return chi;
}

int MonicSieve::chi_monic(const std::vector<int8_t>& chiP, int deg, long long N) const {
  int acc = 1;
  int d = deg;
  long long n = N;
  while (d > 0) {
    const Entry& e = entries_[d][n];
    int c = chiP[e.spf];
    if (c == 0) return 0;
    if (c < 0) acc = -acc;
    d -= prime_deg_[e.spf];
    n = e.quot;
  }
  return acc;
}

IrreducibleTable irreducible_table(const FieldRef& field, int max_deg, long long budget) {
  MonicSieve sieve(field, max_deg, budget);
  IrreducibleTable t;
  t.field = field;
  t.max_deg = max_deg;
  t.by_degree.resize(max_deg + 1);
  for (int d = 1; d <= max_deg; ++d) {
    auto [a, b] = sieve.primes_of_degree(d);
    for (int id = a; id < b; ++id) t.by_degree[d].push_back(sieve.prime(id));
  }
  return t;
}

}  // namespace ffzeta

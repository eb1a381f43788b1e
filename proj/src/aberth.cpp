#include "ffzeta/aberth.hpp"

#include <cmath>

#include "ffzeta/errors.hpp"

namespace ffzeta {

namespace {

using cplx = std::complex<long double>;

// p(z) and p'(z) by one Horner pass.
void eval_both(const std::vector<cplx>& c, cplx z, cplx* p, cplx* dp) {
  cplx v = 0, d = 0;
  for (size_t i = c.size(); i-- > 0;) {
    d = d * z + v;
    v = v * z + c[i];
  }
  *p = v;
  *dp = d;
}

}  // namespace

std::vector<std::complex<double>> aberth_roots(const std::vector<double>& cin,
                                               double init_radius,
                                               int max_iters, double tol) {
  std::vector<cplx> c;
  c.reserve(cin.size());
  for (double v : cin) c.push_back(cplx(v, 0));
  while (!c.empty() && c.back() == cplx(0, 0)) c.pop_back();
  if (c.size() <= 1) return {};
  const int n = static_cast<int>(c.size()) - 1;

  // fixed starting ring; the angular offset breaks real-axis symmetry
  std::vector<cplx> z(n);
  const long double two_pi = 6.283185307179586476925286766559L;
  for (int k = 0; k < n; ++k) {
    long double ang = two_pi * (static_cast<long double>(k) + 0.37L) / n;
    z[k] = cplx(init_radius * std::cos(ang), init_radius * std::sin(ang));
  }

  for (int it = 0; it < max_iters; ++it) {
    long double worst = 0;
    for (int k = 0; k < n; ++k) {
      cplx p, dp;
      eval_both(c, z[k], &p, &dp);
      if (p == cplx(0, 0)) continue;
      cplx w = (dp == cplx(0, 0)) ? cplx(0, 0) : p / dp;
      cplx s = 0;
      for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        cplx diff = z[k] - z[j];
        if (diff == cplx(0, 0)) {
          // nudge coincident iterates apart deterministically
          diff = cplx(1e-12L * (k + 1), 1e-12L * (j + 1));
        }
        s += cplx(1, 0) / diff;
      }
      cplx denom = cplx(1, 0) - w * s;
      cplx corr = (denom == cplx(0, 0)) ? w : w / denom;
      z[k] -= corr;
      long double scale = std::max<long double>(1.0L, std::abs(z[k]));
      worst = std::max(worst, std::abs(corr) / scale);
    }
    if (worst <= tol) break;
  }

  std::vector<std::complex<double>> out;
  out.reserve(n);
  for (const cplx& r : z) {
    out.push_back(std::complex<double>(static_cast<double>(r.real()),
                                       static_cast<double>(r.imag())));
  }
  return out;
}

}  // namespace ffzeta

#pragma once

#include <complex>
#include <vector>

namespace ffzeta {

// Simultaneous root finding for a polynomial with real coefficients,
// c[0] + c[1] u + ... + c[n] u^n. Deterministic: fixed initial ring of the
// given radius, fixed iteration schedule, no randomness. Intended for
// well-conditioned low-degree inputs; callers pass the expected root radius.
std::vector<std::complex<double>> aberth_roots(const std::vector<double>& c,
                                               double init_radius,
                                               int max_iters = 200,
                                               double tol = 1e-14);

}  // namespace ffzeta

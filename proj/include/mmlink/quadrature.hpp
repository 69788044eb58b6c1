#pragma once

#include <cstddef>
#include <functional>

namespace mmlink::quadrature {

struct Result {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

// Adaptive Gauss-Kronrod (15 point) on [a, b]. Subdivides until the local
// error estimate is below max(abs_tol, rel_tol * |integral|) or the depth
// budget is exhausted.
Result integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-10,
                 int max_depth = 30);

// Integral over [a, +inf). The tail is truncated where the integrand has
// decayed below tail_cut relative to the largest magnitude seen while
// doubling the interval.
Result integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double abs_tol = 1e-12, double rel_tol = 1e-10,
                             double tail_cut = 1e-16);

}  // namespace mmlink::quadrature

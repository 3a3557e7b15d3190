#pragma once

#include <cmath>
#include <functional>

#include "core/errors.hpp"

namespace toepspec {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Mean value (1/2pi) * integral over the torus by the M-point periodic
/// trapezoid rule, which for 2pi-periodic integrands is the plain average
/// of equispaced samples.
template <typename F>
double periodic_mean(F&& f, long points) {
  double acc = 0.0;
  for (long j = 0; j < points; ++j) acc += f(kTwoPi * static_cast<double>(j) / points);
  return acc / static_cast<double>(points);
}

/// Same rule with M doubled until two successive values agree to abs_tol
/// (relative for large magnitudes).  Throws QuadratureNotConverged when the
/// cap is reached first.
template <typename F>
double adaptive_periodic_mean(F&& f, double abs_tol = 1e-9, long initial = 256,
                              long cap = 1L << 20) {
  long m = initial;
  double prev = periodic_mean(f, m);
  while (m < cap) {
    m *= 2;
    // Reuse the coarse sum: new points are the odd multiples of pi*2/m.
    double acc_new = 0.0;
    for (long j = 1; j < m; j += 2) acc_new += f(kTwoPi * static_cast<double>(j) / m);
    double cur = 0.5 * prev + acc_new / static_cast<double>(m);
    if (std::abs(cur - prev) <= abs_tol * std::max(1.0, std::abs(cur))) return cur;
    prev = cur;
  }
  fail(ErrorCode::QuadratureNotConverged,
       "periodic quadrature did not settle below tolerance at M=" + std::to_string(cap));
}

}  // namespace toepspec

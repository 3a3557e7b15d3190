#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "core/matrix.hpp"
#include "core/symbol.hpp"

namespace toepspec::testing {

inline Symbol a_plus_cos(double a) {
  return Symbol::trig_poly({{0, cplx{a, 0.0}}, {1, cplx{0.5, 0.0}}, {-1, cplx{0.5, 0.0}}});
}

/// Deterministic real-valued trig polynomial of the given degree: complex
/// coefficients for k = 1..degree mirrored conjugately, real constant term.
inline Symbol random_real_trig_poly(std::mt19937_64& rng, int degree,
                                    double amplitude = 1.0) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  std::map<int, cplx> coeffs;
  coeffs[0] = cplx{u(rng), 0.0};
  for (int k = 1; k <= degree; ++k) {
    const cplx c{u(rng), u(rng)};
    coeffs[k] = c;
    coeffs[-k] = std::conj(c);
  }
  return Symbol::trig_poly(std::move(coeffs));
}

/// Random nonnegative real-valued trig polynomial: the autocorrelation
/// coefficients of a random complex polynomial h, i.e. the coefficients of
/// |h|^2, which are conjugate-symmetric by construction.
inline Symbol random_nonneg_trig_poly(std::mt19937_64& rng, int degree,
                                      double amplitude = 1.0) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  std::vector<cplx> h(static_cast<size_t>(degree + 1));
  for (cplx& c : h) c = cplx{u(rng), u(rng)};
  std::map<int, cplx> coeffs;
  for (int k = -degree; k <= degree; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j <= degree; ++j) {
      const int i = j - k;
      if (i >= 0 && i <= degree)
        acc += h[static_cast<size_t>(j)] * std::conj(h[static_cast<size_t>(i)]);
    }
    coeffs[k] = acc;
  }
  return Symbol::trig_poly(std::move(coeffs));
}

inline Matrix random_hermitian(std::mt19937_64& rng, long m, double amplitude = 1.0) {
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  Matrix a(m, m);
  for (long i = 0; i < m; ++i) {
    a(i, i) = cplx{u(rng), 0.0};
    for (long j = i + 1; j < m; ++j) {
      const cplx v{u(rng), u(rng)};
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }
  return a;
}

}  // namespace toepspec::testing

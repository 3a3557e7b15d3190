#pragma once

#include "core/matrix.hpp"
#include "core/symbol.hpp"

namespace toepspec {

/// Section of order n: the (n+1) x (n+1) matrix with entry (i, j) equal to
/// the (i-j)-th Fourier coefficient of s.
Matrix toeplitz_section(const Symbol& s, long n, const QuadratureOptions& opts = {});

/// Truncated Hankel matrix with entry (i, j) equal to coefficient i+j+1.
Matrix hankel_section(const Symbol& s, long rows, long cols,
                      const QuadratureOptions& opts = {});

/// Explicit inverse of the AR(1) Toeplitz section: tridiagonal with diagonal
/// (1, 1+theta^2, ..., 1+theta^2, 1) and off-diagonals -theta, size n+1.
/// n = 0 raises DegenerateSection (the two corner entries collide).
Matrix ar1_inverse_tridiagonal(double theta, long n);

/// Band large enough for both Hankel contractions of the finite-section
/// product identity: max of the operands' coefficient bands.
long default_widom_band(const Symbol& f, const Symbol& g, double eps = 1e-14);

/// Operator norm of T_n(fg) - T_n(f)T_n(g) minus the two truncated Hankel
/// products of the identity, with the reversed projection realized as the
/// anti-diagonal flip on coordinates 0..n.  The residual is recomputed at
/// twice the band; BandTooSmall when the two disagree beyond band_tol.
double widom_residual(const Symbol& f, const Symbol& g, long n, long band,
                      double band_tol = 1e-10, const QuadratureOptions& opts = {});

}  // namespace toepspec

#pragma once

#include <vector>

#include "core/matrix.hpp"

namespace toepspec {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  Matrix eigenvectors;              // unitary, k-th column pairs with eigenvalues[k];
                                    // empty when vectors were not requested
};

/// Full eigendecomposition of a Hermitian matrix: Householder reduction to a
/// real symmetric tridiagonal (complex subdiagonals folded away by a unitary
/// phase diagonal), then QL with implicit shifts, capped at 50 sweeps per
/// eigenvalue.  Inputs must be Hermitian within 1e-10.
EigenDecomposition hermitian_eig(const Matrix& a, bool want_vectors = true);

/// V diag(sqrt(max(lambda, 0))) V*.  Eigenvalues below -1e-10 * ||A|| raise
/// NotPositiveSemidefinite.
Matrix psd_sqrt(const Matrix& a);

/// det = phase * exp(log_abs) with |phase| = 1; a singular factorization is
/// reported as {-inf, 0}.
struct LogDet {
  double log_abs = 0.0;
  cplx phase = 1.0;
};

cplx det(const Matrix& a);
LogDet log_det(const Matrix& a);

/// LU solve with partial pivoting; pivot tolerance 1e-13 relative.
std::vector<cplx> solve(const Matrix& a, std::vector<cplx> b);

/// Largest singular value, computed as sqrt(lambda_max(A* A)).
double operator_norm(const Matrix& a);

}  // namespace toepspec

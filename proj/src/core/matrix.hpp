#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace toepspec {

using cplx = std::complex<double>;

/// Dense complex matrix, row-major.  Matrices are plain values: construction
/// fills with zeros, copies are deep, and nothing is shared.
class Matrix {
 public:
  Matrix() = default;
  Matrix(long rows, long cols);

  static Matrix identity(long m);

  long rows() const noexcept { return rows_; }
  long cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  cplx& operator()(long i, long j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const cplx& operator()(long i, long j) const {
    return a_[static_cast<size_t>(i) * cols_ + j];
  }

  const cplx* data() const noexcept { return a_.data(); }
  cplx* data() noexcept { return a_.data(); }

  Matrix transpose() const;
  Matrix adjoint() const;

  double max_abs() const;
  double frobenius_norm() const;
  cplx trace() const;

  /// Largest |A(i,j) - conj(A(j,i))| over all pairs; 0 for empty matrices.
  double hermitian_defect() const;
  bool is_hermitian(double tol) const;
  /// Throws NotHermitian when the defect exceeds tol * max(1, max_abs()).
  void require_hermitian(double tol) const;

  /// True when every entry has imaginary part exactly zero.
  bool is_strictly_real() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(cplx scale);

  std::vector<cplx> apply(const std::vector<cplx>& x) const;

 private:
  long rows_ = 0;
  long cols_ = 0;
  std::vector<cplx> a_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(cplx scale, Matrix m);

/// (i,j) -> (rows-1-i, cols-1-j); realizes the finite anti-diagonal flip.
Matrix flip_both(const Matrix& m);

/// Matrix dump format: one-line header "size=m" (square) or "size=r,c",
/// then one CSV line per row of flattened re,im pairs.
void write_matrix_csv(const Matrix& m, std::ostream& out);

}  // namespace toepspec

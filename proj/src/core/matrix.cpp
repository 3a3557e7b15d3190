#include "core/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "core/errors.hpp"

namespace toepspec {

Matrix::Matrix(long rows, long cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    fail(ErrorCode::InvalidArgument, "matrix dimensions must be nonnegative");
  a_.assign(static_cast<size_t>(rows) * static_cast<size_t>(cols), cplx{0.0, 0.0});
}

Matrix Matrix::identity(long m) {
  Matrix id(m, m);
  for (long i = 0; i < m; ++i) id(i, i) = 1.0;
  return id;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::adjoint() const {
  Matrix t(cols_, rows_);
  for (long i = 0; i < rows_; ++i)
    for (long j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
  return t;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (const cplx& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& v : a_) s += std::norm(v);
  return std::sqrt(s);
}

cplx Matrix::trace() const {
  cplx t = 0.0;
  for (long i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double Matrix::hermitian_defect() const {
  if (!is_square()) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  for (long i = 0; i < rows_; ++i)
    for (long j = i; j < cols_; ++j)
      d = std::max(d, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return d;
}

bool Matrix::is_hermitian(double tol) const {
  return is_square() && hermitian_defect() <= tol * std::max(1.0, max_abs());
}

void Matrix::require_hermitian(double tol) const {
  if (!is_square()) fail(ErrorCode::NotHermitian, "matrix is not square");
  double d = hermitian_defect();
  if (d > tol * std::max(1.0, max_abs()))
    fail(ErrorCode::NotHermitian,
         "hermitian defect " + std::to_string(d) + " exceeds tolerance");
}

bool Matrix::is_strictly_real() const {
  for (const cplx& v : a_)
    if (v.imag() != 0.0) return false;
  return true;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(ErrorCode::InvalidArgument, "matrix shape mismatch in +=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(ErrorCode::InvalidArgument, "matrix shape mismatch in -=");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] -= rhs.a_[i];
  return *this;
}

Matrix& Matrix::operator*=(cplx scale) {
  for (cplx& v : a_) v *= scale;
  return *this;
}

std::vector<cplx> Matrix::apply(const std::vector<cplx>& x) const {
  if (static_cast<long>(x.size()) != cols_)
    fail(ErrorCode::InvalidArgument, "matvec size mismatch");
  std::vector<cplx> y(static_cast<size_t>(rows_), cplx{0.0, 0.0});
  for (long i = 0; i < rows_; ++i) {
    cplx acc = 0.0;
    const cplx* row = a_.data() + static_cast<size_t>(i) * cols_;
    for (long j = 0; j < cols_; ++j) acc += row[j] * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = acc;
  }
  return y;
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows())
    fail(ErrorCode::InvalidArgument, "matrix shape mismatch in *");
  Matrix out(lhs.rows(), rhs.cols());
  const long n = lhs.cols(), c = rhs.cols();
  for (long i = 0; i < lhs.rows(); ++i) {
    cplx* orow = out.data() + static_cast<size_t>(i) * c;
    for (long k = 0; k < n; ++k) {
      const cplx a = lhs(i, k);
      if (a == cplx{0.0, 0.0}) continue;
      const cplx* brow = rhs.data() + static_cast<size_t>(k) * c;
      for (long j = 0; j < c; ++j) orow[j] += a * brow[j];
    }
  }
  return out;
}

Matrix operator*(cplx scale, Matrix m) { return m *= scale; }

Matrix flip_both(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j)
      out(i, j) = m(m.rows() - 1 - i, m.cols() - 1 - j);
  return out;
}

void write_matrix_csv(const Matrix& m, std::ostream& out) {
  if (m.is_square())
    out << "size=" << m.rows() << "\n";
  else
    out << "size=" << m.rows() << "," << m.cols() << "\n";
  char buf[64];
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      const cplx v = m(i, j);
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g", v.real(), v.imag());
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

}  // namespace toepspec

#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "core/errors.hpp"

namespace toepspec {

namespace {

// Householder reduction of the Hermitian matrix held in a to tridiagonal
// form.  On return d holds the diagonal and sub the complex subdiagonal;
// the reflector tails stay parked in the strictly-lower columns of a
// (first components in v0s) so q accumulation can replay them.
void householder_reduce(Matrix& a, std::vector<double>& d, std::vector<cplx>& sub,
                        std::vector<double>& betas, std::vector<cplx>& v0s) {
  const long m = a.rows();
  for (long k = 0; k + 2 < m; ++k) {
    const long len = m - k - 1;
    double xnorm2 = 0.0;
    for (long i = 0; i < len; ++i) xnorm2 += std::norm(a(k + 1 + i, k));
    const double xnorm = std::sqrt(xnorm2);
    const cplx x0 = a(k + 1, k);
    if (xnorm == 0.0) {
      sub[static_cast<size_t>(k)] = 0.0;
      betas[static_cast<size_t>(k)] = 0.0;
      v0s[static_cast<size_t>(k)] = 0.0;
      continue;
    }
    const cplx phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cplx{1.0, 0.0};
    const cplx alpha = -phase * xnorm;
    const double vnorm2 = 2.0 * xnorm2 + 2.0 * std::abs(x0) * xnorm;
    const double beta = 2.0 / vnorm2;
    const cplx v0 = x0 - alpha;

    auto v_at = [&](long i) -> cplx { return i == 0 ? v0 : a(k + 1 + i, k); };

    // w = beta * B v - kappa v on the trailing block B = a(k+1.., k+1..).
    std::vector<cplx> w(static_cast<size_t>(len), cplx{0.0, 0.0});
    for (long i = 0; i < len; ++i) {
      cplx acc = 0.0;
      for (long j = 0; j < len; ++j) acc += a(k + 1 + i, k + 1 + j) * v_at(j);
      w[static_cast<size_t>(i)] = beta * acc;
    }
    cplx vw = 0.0;
    for (long i = 0; i < len; ++i) vw += std::conj(v_at(i)) * w[static_cast<size_t>(i)];
    const double kappa = 0.5 * beta * vw.real();
    for (long i = 0; i < len; ++i) w[static_cast<size_t>(i)] -= kappa * v_at(i);

    for (long i = 0; i < len; ++i) {
      const cplx vi = v_at(i);
      const cplx wi = w[static_cast<size_t>(i)];
      for (long j = 0; j < len; ++j)
        a(k + 1 + i, k + 1 + j) -=
            vi * std::conj(w[static_cast<size_t>(j)]) + wi * std::conj(v_at(j));
    }

    sub[static_cast<size_t>(k)] = alpha;
    a(k + 1, k) = alpha;
    a(k, k + 1) = std::conj(alpha);
    betas[static_cast<size_t>(k)] = beta;
    v0s[static_cast<size_t>(k)] = v0;
  }
  if (m > 1) sub[static_cast<size_t>(m - 2)] = a(m - 1, m - 2);
  for (long i = 0; i < m; ++i) d[static_cast<size_t>(i)] = a(i, i).real();
}

// Q = P_0 P_1 ... P_{m-3}, accumulated backwards from the parked reflectors.
Matrix accumulate_q(const Matrix& a, const std::vector<double>& betas,
                    const std::vector<cplx>& v0s) {
  const long m = a.rows();
  Matrix q = Matrix::identity(m);
  for (long k = m - 3; k >= 0; --k) {
    const double beta = betas[static_cast<size_t>(k)];
    if (beta == 0.0) continue;
    const long len = m - k - 1;
    const cplx v0 = v0s[static_cast<size_t>(k)];
    auto v_at = [&](long i) -> cplx { return i == 0 ? v0 : a(k + 1 + i, k); };
    for (long c = k + 1; c < m; ++c) {
      cplx s = 0.0;
      for (long i = 0; i < len; ++i) s += std::conj(v_at(i)) * q(k + 1 + i, c);
      s *= beta;
      for (long i = 0; i < len; ++i) q(k + 1 + i, c) -= s * v_at(i);
    }
  }
  return q;
}

// QL with implicit shifts on the real symmetric tridiagonal (d, e);
// rotations are replayed on the complex columns of q when present.
void ql_implicit_shift(std::vector<double>& d, std::vector<double>& e, Matrix* q) {
  const long m = static_cast<long>(d.size());
  if (m <= 1) return;
  std::vector<double> ee(static_cast<size_t>(m), 0.0);
  for (long i = 0; i + 1 < m; ++i) ee[static_cast<size_t>(i)] = e[static_cast<size_t>(i)];
  const double eps = std::numeric_limits<double>::epsilon();

  for (long l = 0; l < m; ++l) {
    int iter = 0;
    long mm = l;
    do {
      for (mm = l; mm + 1 < m; ++mm) {
        const double dd = std::abs(d[static_cast<size_t>(mm)]) +
                          std::abs(d[static_cast<size_t>(mm + 1)]);
        if (std::abs(ee[static_cast<size_t>(mm)]) <= eps * dd) break;
      }
      if (mm != l) {
        if (iter++ == 50)
          fail(ErrorCode::NoConvergence, "QL sweep cap reached at eigenvalue index " +
                                             std::to_string(l));
        double g = (d[static_cast<size_t>(l + 1)] - d[static_cast<size_t>(l)]) /
                   (2.0 * ee[static_cast<size_t>(l)]);
        double r = std::hypot(g, 1.0);
        g = d[static_cast<size_t>(mm)] - d[static_cast<size_t>(l)] +
            ee[static_cast<size_t>(l)] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        long i = mm - 1;
        for (; i >= l; --i) {
          double f = s * ee[static_cast<size_t>(i)];
          const double b = c * ee[static_cast<size_t>(i)];
          r = std::hypot(f, g);
          ee[static_cast<size_t>(i + 1)] = r;
          if (r == 0.0) {
            d[static_cast<size_t>(i + 1)] -= p;
            ee[static_cast<size_t>(mm)] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<size_t>(i + 1)] - p;
          r = (d[static_cast<size_t>(i)] - g) * s + 2.0 * c * b;
          p = s * r;
          d[static_cast<size_t>(i + 1)] = g + p;
          g = c * r - b;
          if (q) {
            for (long row = 0; row < q->rows(); ++row) {
              const cplx tmp = (*q)(row, i + 1);
              (*q)(row, i + 1) = s * (*q)(row, i) + c * tmp;
              (*q)(row, i) = c * (*q)(row, i) - s * tmp;
            }
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[static_cast<size_t>(l)] -= p;
        ee[static_cast<size_t>(l)] = g;
        ee[static_cast<size_t>(mm)] = 0.0;
      }
    } while (mm != l);
  }
}

struct LuFactors {
  Matrix lu;
  std::vector<long> piv;
  double sign = 1.0;
  bool singular = false;
};

LuFactors lu_factor(Matrix a) {
  if (!a.is_square()) fail(ErrorCode::InvalidArgument, "LU requires a square matrix");
  const long m = a.rows();
  const double scale = std::max(1.0, a.max_abs());
  LuFactors f{std::move(a), std::vector<long>(static_cast<size_t>(m)), 1.0, false};
  for (long k = 0; k < m; ++k) {
    long p = k;
    double best = std::abs(f.lu(k, k));
    for (long r = k + 1; r < m; ++r) {
      const double v = std::abs(f.lu(r, k));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    f.piv[static_cast<size_t>(k)] = p;
    if (p != k) {
      for (long c = 0; c < m; ++c) std::swap(f.lu(k, c), f.lu(p, c));
      f.sign = -f.sign;
    }
    if (best <= 1e-13 * scale) {
      f.singular = true;
      continue;
    }
    const cplx pivot = f.lu(k, k);
    for (long r = k + 1; r < m; ++r) {
      const cplx factor = f.lu(r, k) / pivot;
      f.lu(r, k) = factor;
      if (factor == cplx{0.0, 0.0}) continue;
      for (long c = k + 1; c < m; ++c) f.lu(r, c) -= factor * f.lu(k, c);
    }
  }
  return f;
}

}  // namespace

EigenDecomposition hermitian_eig(const Matrix& a_in, bool want_vectors) {
  a_in.require_hermitian(1e-10);
  const long m = a_in.rows();
  EigenDecomposition out;
  if (m == 0) return out;

  Matrix a = a_in;
  // Exact symmetrization so roundoff asymmetry cannot feed the reduction.
  for (long i = 0; i < m; ++i) {
    a(i, i) = cplx{a(i, i).real(), 0.0};
    for (long j = i + 1; j < m; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }

  std::vector<double> d(static_cast<size_t>(m), 0.0);
  std::vector<cplx> sub(static_cast<size_t>(std::max<long>(m - 1, 0)), cplx{0.0, 0.0});
  std::vector<double> betas(static_cast<size_t>(std::max<long>(m - 2, 0)), 0.0);
  std::vector<cplx> v0s(static_cast<size_t>(std::max<long>(m - 2, 0)), cplx{0.0, 0.0});
  householder_reduce(a, d, sub, betas, v0s);

  Matrix q;
  if (want_vectors) q = accumulate_q(a, betas, v0s);

  // Fold subdiagonal phases into a unitary diagonal: T = D T_real D*.
  std::vector<double> e(static_cast<size_t>(std::max<long>(m - 1, 0)), 0.0);
  cplx p = 1.0;
  for (long k = 0; k + 1 < m; ++k) {
    const cplx u = sub[static_cast<size_t>(k)];
    const double mag = std::abs(u);
    e[static_cast<size_t>(k)] = mag;
    p = mag > 0.0 ? p * (u / mag) : p;
    if (want_vectors)
      for (long row = 0; row < m; ++row) q(row, k + 1) *= p;
  }

  ql_implicit_shift(d, e, want_vectors ? &q : nullptr);

  std::vector<long> order(static_cast<size_t>(m));
  std::iota(order.begin(), order.end(), 0L);
  std::sort(order.begin(), order.end(), [&](long x, long y) {
    return d[static_cast<size_t>(x)] < d[static_cast<size_t>(y)];
  });

  out.eigenvalues.resize(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i)
    out.eigenvalues[static_cast<size_t>(i)] = d[static_cast<size_t>(order[static_cast<size_t>(i)])];
  if (want_vectors) {
    out.eigenvectors = Matrix(m, m);
    for (long c = 0; c < m; ++c)
      for (long r = 0; r < m; ++r)
        out.eigenvectors(r, c) = q(r, order[static_cast<size_t>(c)]);
  }
  return out;
}

Matrix psd_sqrt(const Matrix& a) {
  EigenDecomposition eig = hermitian_eig(a, true);
  const long m = a.rows();
  if (m == 0) return Matrix(0, 0);
  const double scale =
      std::max(std::abs(eig.eigenvalues.front()), std::abs(eig.eigenvalues.back()));
  const double clamp = 1e-10 * scale;
  if (eig.eigenvalues.front() < -clamp)
    fail(ErrorCode::NotPositiveSemidefinite,
         "smallest eigenvalue " + std::to_string(eig.eigenvalues.front()) +
             " below the PSD clamp");
  Matrix scaled = eig.eigenvectors;  // V diag(sqrt(lambda))
  for (long c = 0; c < m; ++c) {
    const double lam = std::max(eig.eigenvalues[static_cast<size_t>(c)], 0.0);
    const double root = std::sqrt(lam);
    for (long r = 0; r < m; ++r) scaled(r, c) *= root;
  }
  Matrix result = scaled * eig.eigenvectors.adjoint();
  // The product is Hermitian by construction; pin it exactly.
  for (long i = 0; i < m; ++i) {
    result(i, i) = cplx{result(i, i).real(), 0.0};
    for (long j = i + 1; j < m; ++j) {
      const cplx avg = 0.5 * (result(i, j) + std::conj(result(j, i)));
      result(i, j) = avg;
      result(j, i) = std::conj(avg);
    }
  }
  return result;
}

cplx det(const Matrix& a) {
  LuFactors f = lu_factor(a);
  if (f.singular) return 0.0;
  cplx acc = f.sign;
  for (long k = 0; k < f.lu.rows(); ++k) acc *= f.lu(k, k);
  return acc;
}

LogDet log_det(const Matrix& a) {
  LuFactors f = lu_factor(a);
  if (f.singular) return {-std::numeric_limits<double>::infinity(), 0.0};
  LogDet out{0.0, cplx{f.sign, 0.0}};
  for (long k = 0; k < f.lu.rows(); ++k) {
    const cplx u = f.lu(k, k);
    out.log_abs += std::log(std::abs(u));
    out.phase *= u / std::abs(u);
  }
  return out;
}

std::vector<cplx> solve(const Matrix& a, std::vector<cplx> b) {
  if (static_cast<long>(b.size()) != a.rows())
    fail(ErrorCode::InvalidArgument, "solve: rhs size mismatch");
  LuFactors f = lu_factor(a);
  if (f.singular) fail(ErrorCode::Singular, "solve: matrix is singular to pivot tolerance");
  const long m = a.rows();
  // P b first (the stored multipliers live in final row positions), then
  // the two triangular solves.
  for (long k = 0; k < m; ++k)
    std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(f.piv[static_cast<size_t>(k)])]);
  for (long k = 0; k < m; ++k)
    for (long r = k + 1; r < m; ++r)
      b[static_cast<size_t>(r)] -= f.lu(r, k) * b[static_cast<size_t>(k)];
  for (long k = m - 1; k >= 0; --k) {
    cplx acc = b[static_cast<size_t>(k)];
    for (long c = k + 1; c < m; ++c) acc -= f.lu(k, c) * b[static_cast<size_t>(c)];
    b[static_cast<size_t>(k)] = acc / f.lu(k, k);
  }
  return b;
}

double operator_norm(const Matrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  const Matrix gram = a.adjoint() * a;
  EigenDecomposition eig = hermitian_eig(gram, false);
  return std::sqrt(std::max(eig.eigenvalues.back(), 0.0));
}

}  // namespace toepspec

// SPDX-License-Identifier: Apache-2.0
#include "qamsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qamsim/errors.hpp"

namespace qamsim {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::outer(const CVector& v, const CVector& w) {
  CMatrix m(v.size(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
  return m;
}

CMatrix CMatrix::operator+(const CMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorKind::DimensionMismatch, "matrix add: shape mismatch");
  CMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorKind::DimensionMismatch, "matrix sub: shape mismatch");
  CMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (cols_ != o.rows_)
    fail(ErrorKind::DimensionMismatch, "matrix mul: shape mismatch");
  CMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      cplx a = (*this)(i, k);
      if (a == cplx(0.0, 0.0)) continue;
      const cplx* brow = &o.data_[k * o.cols_];
      cplx* rrow = &r.data_[i * o.cols_];
      for (std::size_t j = 0; j < o.cols_; ++j) rrow[j] += a * brow[j];
    }
  }
  return r;
}

CVector CMatrix::operator*(const CVector& v) const {
  if (cols_ != v.size())
    fail(ErrorKind::DimensionMismatch, "matrix-vector mul: shape mismatch");
  CVector r(rows_, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < rows_; ++i) {
    cplx acc(0.0, 0.0);
    const cplx* row = &data_[i * cols_];
    for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * v[j];
    r[i] = acc;
  }
  return r;
}

CMatrix CMatrix::operator*(cplx s) const {
  CMatrix r = *this;
  for (auto& x : r.data_) x *= s;
  return r;
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    fail(ErrorKind::DimensionMismatch, "matrix add: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

CMatrix CMatrix::adjoint() const {
  CMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx CMatrix::trace() const {
  cplx t(0.0, 0.0);
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& x : data_) m = std::max(m, std::abs(x));
  return m;
}

double CMatrix::hermiticity_defect() const {
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      cplx av = a(i, j);
      if (av == cplx(0.0, 0.0)) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = av * b(k, l);
    }
  return r;
}

cplx inner(const CVector& a, const CVector& b) {
  if (a.size() != b.size())
    fail(ErrorKind::DimensionMismatch, "inner product: length mismatch");
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double norm(const CVector& v) {
  double acc = 0.0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

void normalize(CVector& v) {
  double n = norm(v);
  if (n < 1e-300) fail(ErrorKind::InvalidArgument, "cannot normalize zero vector");
  for (auto& x : v) x /= n;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
  return r;
}

namespace {

// One two-sided Jacobi rotation annihilating h(p,q). The 2x2 unitary is the
// phase factor-out of h(p,q) composed with the standard real Givens rotation.
void jacobi_rotate(CMatrix& h, CMatrix& v, std::size_t p, std::size_t q) {
  cplx hpq = h(p, q);
  double r = std::abs(hpq);
  if (r == 0.0) return;
  cplx alpha = hpq / r;
  double hpp = h(p, p).real();
  double hqq = h(q, q).real();
  double tau = (hpp - hqq) / (2.0 * r);
  double t;
  if (tau >= 0.0)
    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
  else
    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
  double c = 1.0 / std::sqrt(1.0 + t * t);
  double s = t * c;

  const std::size_t n = h.rows();
  // Columns: A <- A G with G_pp = alpha c, G_pq = -alpha s, G_qp = s, G_qq = c.
  for (std::size_t i = 0; i < n; ++i) {
    cplx aip = h(i, p), aiq = h(i, q);
    h(i, p) = alpha * c * aip + s * aiq;
    h(i, q) = -alpha * s * aip + c * aiq;
  }
  // Rows: A <- G^dagger A.
  for (std::size_t j = 0; j < n; ++j) {
    cplx apj = h(p, j), aqj = h(q, j);
    h(p, j) = std::conj(alpha) * c * apj + s * aqj;
    h(q, j) = -std::conj(alpha) * s * apj + c * aqj;
  }
  // Accumulate eigenvectors: V <- V G.
  for (std::size_t i = 0; i < n; ++i) {
    cplx vip = v(i, p), viq = v(i, q);
    v(i, p) = alpha * c * vip + s * viq;
    v(i, q) = -alpha * s * vip + c * viq;
  }
  // Clean the annihilated pair against round-off.
  h(p, q) = 0.0;
  h(q, p) = 0.0;
}

double off_diagonal_norm(const CMatrix& h) {
  double acc = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      if (i != j) acc += std::norm(h(i, j));
  return std::sqrt(acc);
}

}  // namespace

EigenSystem hermitian_eigensystem(const CMatrix& h, double tol) {
  if (h.rows() != h.cols())
    fail(ErrorKind::DimensionMismatch, "eigensystem: matrix not square");
  if (h.hermiticity_defect() > 1e-7 * std::max(1.0, h.max_abs()))
    fail(ErrorKind::InvalidArgument, "eigensystem: matrix not Hermitian");

  const std::size_t n = h.rows();
  CMatrix a = h;
  // Symmetrize so round-off in the input cannot bias the iteration.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
  CMatrix v = CMatrix::identity(n);

  double scale = std::max(a.max_abs(), 1e-300);
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(a) <= tol * scale * static_cast<double>(n)) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > tol * scale * 1e-3) jacobi_rotate(a, v, p, q);
  }

  EigenSystem sys;
  sys.values.resize(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });
  sys.vectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    sys.values[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) sys.vectors(i, k) = v(i, order[k]);
  }
  return sys;
}

double lambda_max(const CMatrix& h) {
  EigenSystem sys = hermitian_eigensystem(h);
  return sys.values.back();
}

double trace_norm_hermitian(const CMatrix& a, double hermitian_tol) {
  if (a.rows() != a.cols())
    fail(ErrorKind::DimensionMismatch, "trace norm: matrix not square");
  if (a.hermiticity_defect() > hermitian_tol * std::max(1.0, a.max_abs()))
    fail(ErrorKind::InvalidArgument, "trace norm: matrix not Hermitian");
  EigenSystem sys = hermitian_eigensystem(a);
  double acc = 0.0;
  for (double ev : sys.values) acc += std::abs(ev);
  return acc;
}

CMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = cplx(rng.gaussian(), rng.gaussian());
  return m;
}

CVector random_gaussian_vector(std::size_t n, Rng& rng) {
  CVector v(n);
  for (auto& x : v) x = cplx(rng.gaussian(), rng.gaussian());
  return v;
}

}  // namespace qamsim

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qamsim/rng.hpp"

namespace qamsim {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

// Dense row-major complex matrix. Sized for desk-scale exact computation
// (dimensions up to a few thousand), not for performance at scale.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

  static CMatrix identity(std::size_t n);
  static CMatrix zero(std::size_t n) { return CMatrix(n, n); }
  // Rank-one |v><w|.
  static CMatrix outer(const CVector& v, const CVector& w);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  CMatrix operator+(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix operator*(const CMatrix& o) const;
  CVector operator*(const CVector& v) const;
  CMatrix operator*(cplx s) const;
  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  CMatrix adjoint() const;
  cplx trace() const;
  double max_abs() const;              // entrywise max |a_ij|
  double hermiticity_defect() const;   // max |a_ij - conj(a_ji)|

  const std::vector<cplx>& data() const { return data_; }
  std::vector<cplx>& data() { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix kron(const CMatrix& a, const CMatrix& b);

cplx inner(const CVector& a, const CVector& b);  // <a|b>
double norm(const CVector& v);
void normalize(CVector& v);
CVector kron(const CVector& a, const CVector& b);

struct EigenSystem {
  std::vector<double> values;  // ascending
  CMatrix vectors;             // column k is the eigenvector of values[k]
};

// Cyclic-Jacobi diagonalization of a complex Hermitian matrix. Exact enough
// for the certification sweeps here: the reconstruction V D V^dagger matches
// the input to ~1e-12 of its scale for the matrix sizes we use.
EigenSystem hermitian_eigensystem(const CMatrix& h, double tol = 1e-13);

double lambda_max(const CMatrix& h);

// Schatten-1 norm of a Hermitian matrix (sum of |eigenvalue|).
// Fails if the input is not Hermitian within `hermitian_tol`.
double trace_norm_hermitian(const CMatrix& a, double hermitian_tol = 1e-7);

// Ginibre matrix: i.i.d. standard complex Gaussian entries.
CMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);
CVector random_gaussian_vector(std::size_t n, Rng& rng);

}  // namespace qamsim

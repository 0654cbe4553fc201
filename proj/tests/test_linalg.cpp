// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "qamsim/linalg.hpp"
#include "qamsim/rng.hpp"

using namespace qamsim;

TEST_CASE("matrix product and kron basics") {
  CMatrix x(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  CMatrix z = CMatrix::identity(2);
  z(1, 1) = -1.0;

  CMatrix xz = x * z;
  CHECK(xz(0, 1) == cplx(-1.0, 0.0));
  CHECK(xz(1, 0) == cplx(1.0, 0.0));

  CMatrix k = kron(x, z);
  CHECK(k.rows() == 4);
  CHECK(k(0, 2) == cplx(1.0, 0.0));
  CHECK(k(1, 3) == cplx(-1.0, 0.0));
  CHECK(k(2, 0) == cplx(1.0, 0.0));
  CHECK(k(3, 1) == cplx(-1.0, 0.0));
}

TEST_CASE("jacobi eigensystem reconstructs random Hermitian matrices") {
  Rng rng(7);
  for (std::size_t dim : {2u, 3u, 8u, 16u, 32u}) {
    CMatrix a = random_gaussian_matrix(dim, dim, rng);
    CMatrix h = a + a.adjoint();
    EigenSystem sys = hermitian_eigensystem(h);

    // V D V^dagger == H entrywise.
    CMatrix recon(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        cplx acc(0.0, 0.0);
        for (std::size_t k = 0; k < dim; ++k)
          acc += sys.vectors(i, k) * sys.values[k] * std::conj(sys.vectors(j, k));
        recon(i, j) = acc;
      }
    CHECK((recon - h).max_abs() < 1e-10 * std::max(1.0, h.max_abs()));

    // V unitary.
    CMatrix vv = sys.vectors.adjoint() * sys.vectors;
    CHECK((vv - CMatrix::identity(dim)).max_abs() < 1e-10);

    // Values ascending.
    for (std::size_t k = 1; k < dim; ++k) CHECK(sys.values[k - 1] <= sys.values[k] + 1e-12);
  }
}

TEST_CASE("eigenvalues of known matrices") {
  CMatrix z = CMatrix::identity(2);
  z(1, 1) = -1.0;
  EigenSystem sys = hermitian_eigensystem(z);
  CHECK(sys.values[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(sys.values[1] == doctest::Approx(1.0).epsilon(1e-12));

  // deliberately imbalanced diagonal plus coupling: eigenvalues of
  // [[2, i],[-i, 2]] are 1 and 3.
  CMatrix h(2, 2);
  h(0, 0) = 2.0;
  h(1, 1) = 2.0;
  h(0, 1) = cplx(0.0, 1.0);
  h(1, 0) = cplx(0.0, -1.0);
  sys = hermitian_eigensystem(h);
  CHECK(sys.values[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sys.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eigensystem edge cases: tiny, zero, and degenerate matrices") {
  // 1x1.
  CMatrix one(1, 1);
  one(0, 0) = -3.5;
  EigenSystem sys = hermitian_eigensystem(one);
  CHECK(sys.values[0] == doctest::Approx(-3.5));

  // Zero matrix.
  sys = hermitian_eigensystem(CMatrix::zero(4));
  for (double v : sys.values) CHECK(v == doctest::Approx(0.0));

  // Rank-2 projector: spectrum {0, 0, 1, 1} and idempotent reconstruction.
  Rng rng(13);
  CMatrix a = random_gaussian_matrix(4, 2, rng);
  // Orthonormalize the two columns.
  CVector c0(4), c1(4);
  for (int i = 0; i < 4; ++i) {
    c0[i] = a(i, 0);
    c1[i] = a(i, 1);
  }
  normalize(c0);
  cplx overlap = inner(c0, c1);
  for (int i = 0; i < 4; ++i) c1[i] -= overlap * c0[i];
  normalize(c1);
  CMatrix proj = CMatrix::outer(c0, c0) + CMatrix::outer(c1, c1);
  sys = hermitian_eigensystem(proj);
  CHECK(sys.values[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(sys.values[1] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(sys.values[2] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sys.values[3] == doctest::Approx(1.0).epsilon(1e-10));

  // Non-Hermitian input is rejected.
  CMatrix skew(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS(hermitian_eigensystem(skew));
}

TEST_CASE("trace norm of Hermitian matrices") {
  // diag(1, -1): trace norm 2.
  CMatrix z = CMatrix::identity(2);
  z(1, 1) = -1.0;
  CHECK(trace_norm_hermitian(z) == doctest::Approx(2.0).epsilon(1e-12));

  Rng rng(11);
  CMatrix a = random_gaussian_matrix(6, 6, rng);
  CMatrix h = a + a.adjoint();
  // Scaling linearity.
  CHECK(trace_norm_hermitian(h * cplx(0.5, 0.0)) ==
        doctest::Approx(0.5 * trace_norm_hermitian(h)).epsilon(1e-10));
}

TEST_CASE("rng determinism and splitting") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

  Rng base(42);
  Rng c1 = base.split(1), c2 = base.split(2);
  CHECK(c1.seed() != c2.seed());

  Rng u(3);
  for (int i = 0; i < 1000; ++i) {
    double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

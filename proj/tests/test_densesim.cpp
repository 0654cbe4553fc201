// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qamsim/densesim.hpp"
#include "qamsim/errors.hpp"

using namespace qamsim;

TEST_CASE("plus_state amplitudes and norms") {
  QuantumState one = plus_state(1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(one.amplitudes()[0] - cplx(inv_sqrt2, 0.0)) < 1e-15);
  CHECK(std::abs(one.amplitudes()[1] - cplx(inv_sqrt2, 0.0)) < 1e-15);

  QuantumState two = plus_state(2);
  for (const auto& a : two.amplitudes()) CHECK(std::abs(a - cplx(0.5, 0.0)) < 1e-15);

  for (std::size_t n = 1; n <= 6; ++n)
    CHECK(norm(plus_state(n).amplitudes()) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("apply_cz on |++> and involution") {
  QuantumState s = apply_cz(plus_state(2), 0, 1);
  // (|00> + |01> + |10> - |11>)/2
  CHECK(s.amplitudes()[0] == cplx(0.5, 0.0));
  CHECK(s.amplitudes()[1] == cplx(0.5, 0.0));
  CHECK(s.amplitudes()[2] == cplx(0.5, 0.0));
  CHECK(s.amplitudes()[3] == cplx(-0.5, 0.0));

  Rng rng(3);
  QuantumState r = random_pure_state(3, rng);
  QuantumState twice = apply_cz(apply_cz(r, 0, 2), 0, 2);
  CHECK(twice.approx_equal(r, 1e-12));

  QuantumState zz = basis_state(2, 0);
  CHECK(apply_cz(zz, 0, 1).approx_equal(zz, 0.0));

  CHECK_THROWS_AS(apply_cz(zz, 0, 0), Error);
  CHECK_THROWS_AS(apply_cz(zz, 0, 5), Error);
}

TEST_CASE("apply_unitary basics") {
  QuantumState zero = basis_state(1, 0);
  QuantumState plus = apply_unitary(zero, gate_matrix("H"), {0});
  CHECK(plus.approx_equal(plus_state(1), 1e-12));

  Rng rng(5);
  QuantumState r = random_pure_state(3, rng);
  CHECK(apply_unitary(r, CMatrix::identity(2), {1}).approx_equal(r, 1e-15));

  CMatrix u = gate_matrix("RY", 0.7);
  QuantumState round = apply_unitary(apply_unitary(r, u, {2}), u.adjoint(), {2});
  CHECK(round.approx_equal(r, 1e-12));

  // Non-unitary input rejected.
  CMatrix bad = CMatrix::identity(2);
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(apply_unitary(r, bad, {0}), Error);
}

TEST_CASE("apply_unitary matches dense conjugation on mixed states") {
  Rng rng(7);
  QuantumState rho = random_mixed_state(2, rng);
  CMatrix u = gate_matrix("CNOT");
  QuantumState out = apply_unitary(rho, u, {0, 1});
  CMatrix expect = u * rho.density() * u.adjoint();
  CHECK(oracle::max_entry_distance(out.density(), expect) < 1e-12);

  // Reversed target order = conjugation by SWAP u SWAP.
  CMatrix swap = gate_matrix("SWAP");
  QuantumState out2 = apply_unitary(rho, u, {1, 0});
  CMatrix expect2 = (swap * u * swap) * rho.density() * (swap * u * swap).adjoint();
  CHECK(oracle::max_entry_distance(out2.density(), expect2) < 1e-12);
}

TEST_CASE("apply_unitary on non-adjacent targets via a swap detour") {
  Rng rng(37);
  CMatrix u = kron(gate_matrix("RY", 0.9), gate_matrix("RZ", -0.4)) * gate_matrix("CNOT");
  QuantumState s = random_pure_state(3, rng);

  QuantumState direct = apply_unitary(s, u, {0, 2});
  // Same operation routed through an explicit SWAP of qubits 1 and 2.
  QuantumState detour = apply_unitary(s, gate_matrix("SWAP"), {1, 2});
  detour = apply_unitary(detour, u, {0, 1});
  detour = apply_unitary(detour, gate_matrix("SWAP"), {1, 2});
  CHECK(direct.approx_equal(detour, 1e-12));
}

TEST_CASE("pure and mixed routes agree for Pauli expectations and measurements") {
  Rng rng(41);
  for (int t = 0; t < 15; ++t) {
    QuantumState psi = random_pure_state(2, rng);
    QuantumState rho = QuantumState::mixed_unchecked(
        2, CMatrix::outer(psi.amplitudes(), psi.amplitudes()));
    PauliString p = PauliString::from_string(t % 2 ? "-YX" : "+XZ");
    CHECK(pauli_plus_probability(psi, p) ==
          doctest::Approx(pauli_plus_probability(rho, p)).epsilon(1e-12));

    Rng fork_a = rng.split(t);
    Rng fork_b = rng.split(t);
    MeasureResult ra = measure_pauli(psi, p, fork_a);
    MeasureResult rb = measure_pauli(rho, p, fork_b);
    CHECK(ra.outcome == rb.outcome);
    CHECK(ra.post.approx_equal(rb.post, 1e-10));
  }
}

TEST_CASE("measure_pauli eigenstates and coin flips") {
  Rng rng(11);
  // Z on |0>: +1 with certainty.
  MeasureResult r = measure_pauli(basis_state(1, 0), PauliString::from_string("Z"), rng);
  CHECK(r.outcome == +1);
  CHECK(r.probability == doctest::Approx(1.0));

  // X(x)Z on the edge graph state: +1 with certainty.
  QuantumState g = apply_cz(plus_state(2), 0, 1);
  r = measure_pauli(g, PauliString::from_string("XZ"), rng);
  CHECK(r.outcome == +1);
  CHECK(r.probability == doctest::Approx(1.0).epsilon(1e-12));

  // X(x)Z on |00>: probability 1/2 each; post state renormalized.
  double p = pauli_plus_probability(basis_state(2, 0), PauliString::from_string("XZ"));
  CHECK(p == doctest::Approx(0.5).epsilon(1e-12));

  // Imaginary-phase operators are rejected.
  CHECK_THROWS_AS(measure_pauli(basis_state(1, 0), PauliString::from_string("iX"), rng), Error);
}

TEST_CASE("measure_pauli frequencies converge to the Born rule") {
  Rng rng(13);
  QuantumState rho = random_mixed_state(2, rng);
  PauliString p = PauliString::from_string("XZ");
  const double exact = pauli_plus_probability(rho, p);
  const std::uint64_t trials = 100000;
  std::uint64_t plus = 0;
  for (std::uint64_t t = 0; t < trials; ++t)
    if (measure_pauli(rho, p, rng).outcome == +1) ++plus;
  const double rate = static_cast<double>(plus) / trials;
  const double sigma = std::sqrt(exact * (1.0 - exact) / trials);
  CHECK(std::abs(rate - exact) <= 4.0 * sigma + 1e-12);
}

TEST_CASE("measurement post-states are the renormalized projections") {
  Rng rng(17);
  QuantumState rho = random_mixed_state(2, rng);
  PauliString p = PauliString::from_string("-ZX");
  MeasureResult r = measure_pauli(rho, p, rng);
  const double sgn = r.outcome;
  CMatrix proj = (CMatrix::identity(4) + p.dense_matrix() * cplx(sgn, 0.0)) * cplx(0.5, 0.0);
  CMatrix expect = proj * rho.density() * proj;
  expect *= cplx(1.0 / expect.trace().real(), 0.0);
  CHECK(oracle::max_entry_distance(r.post.density(), expect) < 1e-10);
  CHECK(r.post.density().trace().real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("expectation values") {
  QuantumState plus = plus_state(1);
  CHECK(expectation(plus, ObservableElement::identity(1)) == doctest::Approx(1.0));
  CHECK(expectation(plus, CMatrix::zero(2)) == doctest::Approx(0.0));

  CMatrix pi1(2, 2);
  pi1(1, 1) = 1.0;
  CHECK(expectation(plus, pi1) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("trace_norm_distance basics and metric properties") {
  QuantumState zero = basis_state(1, 0);
  QuantumState one = basis_state(1, 1);
  QuantumState plus = plus_state(1);

  CHECK(trace_norm_distance(zero, zero) == doctest::Approx(0.0));
  CHECK(trace_norm_distance(zero, one) == doctest::Approx(2.0).epsilon(1e-12));
  // Eigenvalues of |0><0| - |+><+| are +/- 1/sqrt(2).
  CHECK(trace_norm_distance(zero, plus) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));

  Rng rng(19);
  for (int t = 0; t < 20; ++t) {
    QuantumState a = random_mixed_state(2, rng);
    QuantumState b = random_mixed_state(2, rng);
    QuantumState c = random_mixed_state(2, rng);
    const double ab = trace_norm_distance(a, b);
    const double ba = trace_norm_distance(b, a);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
    CHECK(ab <= trace_norm_distance(a, c) + trace_norm_distance(c, b) + 1e-9);
  }
}

TEST_CASE("partial trace") {
  Rng rng(23);
  QuantumState r = random_mixed_state(3, rng);
  std::vector<std::size_t> all{0, 1, 2};
  CHECK(partial_trace(r, all).approx_equal(r, 1e-12));

  // Bell pair: each half is maximally mixed.
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  QuantumState bell =
      QuantumState::pure(2, {cplx(inv_sqrt2, 0.0), 0.0, 0.0, cplx(inv_sqrt2, 0.0)});
  QuantumState half = partial_trace(bell, {0});
  CHECK(half.approx_equal(maximally_mixed_state(1), 1e-12));

  // Product structure: tracing out the second register returns the first.
  QuantumState a = random_pure_state(1, rng);
  QuantumState b = random_pure_state(1, rng);
  QuantumState prod = QuantumState::pure(2, kron(a.amplitudes(), b.amplitudes()));
  CHECK(partial_trace(prod, {0}).approx_equal(a, 1e-12));
  CHECK(partial_trace(prod, {1}).approx_equal(b, 1e-12));

  // Trace preserved.
  CHECK(partial_trace(r, {1}).density().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("state validation rejects bad inputs") {
  CHECK_THROWS_AS(QuantumState::pure(1, {cplx(1.0, 0.0), cplx(1.0, 0.0)}), Error);

  CMatrix not_psd = CMatrix::identity(2);
  not_psd(0, 0) = 1.5;
  not_psd(1, 1) = -0.5;
  CHECK_THROWS_AS(QuantumState::mixed(1, not_psd), Error);

  CMatrix bad_trace = CMatrix::identity(2);
  CHECK_THROWS_AS(QuantumState::mixed(1, bad_trace), Error);
}

TEST_CASE("dense caps are enforced") {
  DenseCaps saved = dense_caps();
  dense_caps().pure_qubits = 3;
  CHECK_THROWS_AS(plus_state(4), Error);
  CHECK_NOTHROW(plus_state(3));
  dense_caps() = saved;
}

TEST_CASE("random mixed states are valid density matrices") {
  Rng rng(29);
  for (int t = 0; t < 10; ++t) {
    QuantumState rho = random_mixed_state(3, rng);
    CHECK(rho.density().trace().real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rho.density().hermiticity_defect() < 1e-12);
    EigenSystem sys = hermitian_eigensystem(rho.density());
    CHECK(sys.values.front() > -1e-12);
  }
}

TEST_CASE("random observables are POVM elements") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    ObservableElement m = random_observable(2, rng);
    EigenSystem sys = hermitian_eigensystem(m.matrix());
    CHECK(sys.values.front() > -1e-9);
    CHECK(sys.values.back() < 1.0 + 1e-9);
  }
}

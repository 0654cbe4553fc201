// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "qamsim/errors.hpp"
#include "qamsim/mbqc.hpp"

using namespace qamsim;

TEST_CASE("pattern validation") {
  MeasurementPattern pat;
  pat.steps = {MeasureStep{0, {}, {}}, MeasureStep{0, {}, {}}};
  pat.output_qubits = {1};
  CHECK_THROWS_AS(pat.check(2), Error);  // qubit measured twice

  pat.steps = {MeasureStep{0, {}, {0}}};
  pat.output_qubits = {1};
  CHECK_THROWS_AS(pat.check(2), Error);  // self dependency

  pat.steps = {MeasureStep{0, {}, {}}};
  pat.output_qubits = {0};
  CHECK_THROWS_AS(pat.check(2), Error);  // output was measured

  pat.output_qubits = {1};
  CHECK_NOTHROW(pat.check(2));
}

TEST_CASE("empty pattern leaves the state alone") {
  Rng rng(3);
  QuantumState s = random_pure_state(2, rng);
  MeasurementPattern pat;
  pat.output_qubits = {0, 1};
  PatternResult res = execute_pattern(s, pat, rng);
  CHECK(res.outcomes.empty());
  CHECK(res.post.approx_equal(s, 1e-12));
}

TEST_CASE("single-qubit measurement Born statistics in the XY plane") {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    QuantumState s = random_pure_state(2, rng);
    const double theta = 2.0 * M_PI * rng.uniform();
    // (I + cos X + sin Y)/2 as an explicit matrix on the chosen qubit.
    CMatrix obs(2, 2);
    obs(0, 1) = std::exp(cplx(0.0, -theta));
    obs(1, 0) = std::exp(cplx(0.0, theta));
    CMatrix proj = (CMatrix::identity(2) + obs) * cplx(0.5, 0.0);
    const std::size_t qubit = rng.index(2);
    CMatrix full = qubit == 0 ? kron(proj, CMatrix::identity(2))
                              : kron(CMatrix::identity(2), proj);
    const double p_plus = expectation(s, full);

    SingleQubitOutcome out =
        measure_single_qubit(s, qubit, BasisSpec{BasisSpec::Plane::XY, theta}, rng);
    CHECK(out.probability ==
          doctest::Approx(out.bit == 0 ? p_plus : 1.0 - p_plus).epsilon(1e-9));
    CHECK(norm(out.post.amplitudes()) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("teleportation pattern implements H") {
  Rng rng(7);
  double dev = pattern_vs_circuit(teleportation_pattern(), teleportation_resource,
                                  gate_matrix("H"), 200, rng);
  CHECK(dev < 1e-9);
}

TEST_CASE("two-step wire implements the identity") {
  Rng rng(11);
  double dev = pattern_vs_circuit(wire_identity_pattern(), wire_identity_resource,
                                  CMatrix::identity(2), 100, rng);
  CHECK(dev < 1e-9);
}

TEST_CASE("identity pattern vs identity unitary is exact") {
  Rng rng(13);
  MeasurementPattern pat;
  pat.output_qubits = {0};
  double dev = pattern_vs_circuit(
      pat, [](const QuantumState& in) { return in; }, CMatrix::identity(2), 50, rng);
  CHECK(dev == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("negative control: wrong byproduct rule misses H") {
  Rng rng(17);
  MeasurementPattern wrong = teleportation_pattern();
  wrong.byproducts.clear();  // drop the X correction entirely
  double dev = pattern_vs_circuit(wrong, teleportation_resource, gate_matrix("H"), 100, rng);
  CHECK(dev > 0.05);
}

TEST_CASE("angle adaptivity: two-step rotation chain") {
  // Measuring at angles (t1, t2) with the second sign-adapted implements
  // H P(-t2) H P(-t1) up to the tracked Pauli frame.
  Rng rng(19);
  const double t1 = 0.83, t2 = -1.21;
  MeasurementPattern pat;
  pat.steps = {MeasureStep{0, BasisSpec{BasisSpec::Plane::XY, t1}, {}},
               MeasureStep{1, BasisSpec{BasisSpec::Plane::XY, t2}, {0}}};
  pat.output_qubits = {2};
  pat.byproducts = {ByproductRule{2, {1}, {0}}};

  CMatrix target = gate_matrix("H") * gate_matrix("P", -t2) * gate_matrix("H") *
                   gate_matrix("P", -t1);
  double dev = pattern_vs_circuit(pat, wire_identity_resource, target, 150, rng);
  CHECK(dev < 1e-9);
}

TEST_CASE("Z-plane measurement collapses the computational basis") {
  Rng rng(23);
  QuantumState s = plus_state(1);
  SingleQubitOutcome out = measure_single_qubit(s, 0, BasisSpec{BasisSpec::Plane::Z, 0.0}, rng);
  CHECK(out.probability == doctest::Approx(0.5).epsilon(1e-12));
  QuantumState expect = basis_state(1, out.bit);
  CHECK(out.post.approx_equal(expect, 1e-12));
}

TEST_CASE("pattern works on mixed inputs") {
  Rng rng(29);
  // Depolarized teleportation resource still outputs a unit-trace state.
  QuantumState in = random_pure_state(1, rng);
  QuantumState res = teleportation_resource(in);
  CMatrix rho = res.density() * cplx(0.9, 0.0);
  for (std::size_t i = 0; i < 4; ++i) rho(i, i) += 0.1 / 4.0;
  QuantumState noisy = QuantumState::mixed(2, std::move(rho));
  PatternResult out = execute_pattern(noisy, teleportation_pattern(), rng);
  CHECK(out.post.density().trace().real() == doctest::Approx(1.0).epsilon(1e-9));
}

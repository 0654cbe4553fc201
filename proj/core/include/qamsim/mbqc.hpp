// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <vector>

#include "qamsim/densesim.hpp"

namespace qamsim {

// Measurement basis for one pattern step. XY measures cos(a) X + sin(a) Y;
// Z ignores the angle.
struct BasisSpec {
  enum class Plane { XY, Z };
  Plane plane = Plane::XY;
  double angle = 0.0;
};

struct MeasureStep {
  std::size_t qubit;
  BasisSpec basis;
  // Earlier step indices whose outcome parity flips the sign of the angle.
  std::vector<std::size_t> deps;
};

// Pauli-frame correction applied to an output qubit at pattern end:
// X^{parity of x_deps outcomes} then Z^{parity of z_deps outcomes}.
struct ByproductRule {
  std::size_t qubit;
  std::vector<std::size_t> x_deps;
  std::vector<std::size_t> z_deps;
};

// Adaptive single-qubit measurement pattern. Each qubit measured at most
// once, dependencies reference only earlier steps, outputs stay unmeasured.
struct MeasurementPattern {
  std::vector<MeasureStep> steps;
  std::vector<std::size_t> output_qubits;
  std::vector<ByproductRule> byproducts;

  void check(std::size_t num_qubits) const;
};

struct PatternResult {
  std::vector<int> outcomes;  // bit per step: 0 for +1, 1 for -1
  QuantumState post;          // byproduct-corrected state on output qubits
};

PatternResult execute_pattern(const QuantumState& state, const MeasurementPattern& pat,
                              Rng& rng);

// Measure a single-qubit observable with eigenvalues +/-1 given by the basis
// spec. Returns the outcome bit and the renormalized post state.
struct SingleQubitOutcome {
  int bit;
  QuantumState post;
  double probability;
};
SingleQubitOutcome measure_single_qubit(const QuantumState& s, std::size_t qubit,
                                        const BasisSpec& basis, Rng& rng);

// Max fidelity deficit of the byproduct-corrected pattern output against
// U|psi> over random inputs. resource_builder maps an input state on the
// pattern's logical input to the full resource state the pattern consumes.
double pattern_vs_circuit(const MeasurementPattern& pat,
                          const std::function<QuantumState(const QuantumState&)>& resource_builder,
                          const CMatrix& u, std::size_t trials, Rng& rng);

// Two-qubit wire CZ(|psi> tensor |+>), X-measurement on qubit 0: implements H.
MeasurementPattern teleportation_pattern();
QuantumState teleportation_resource(const QuantumState& input);

// Three-qubit wire, two X measurements: implements H H = I.
MeasurementPattern wire_identity_pattern();
QuantumState wire_identity_resource(const QuantumState& input);

}  // namespace qamsim

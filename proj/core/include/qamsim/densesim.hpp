// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qamsim/linalg.hpp"
#include "qamsim/pauli.hpp"
#include "qamsim/rng.hpp"

namespace qamsim {

// Size limits for exact dense simulation, overridable from the CLI.
struct DenseCaps {
  int pure_qubits = 12;
  int mixed_qubits = 10;
};
DenseCaps& dense_caps();

constexpr double kValidityTol = 1e-9;
constexpr double kAlgebraTol = 1e-12;

// Exact n-qubit state, pure (amplitude vector) or mixed (density matrix).
// Qubit 0 is the most significant bit of basis-state labels.
class QuantumState {
 public:
  static QuantumState pure(std::size_t n, CVector amplitudes);
  static QuantumState mixed(std::size_t n, CMatrix density);
  // Mixed constructor that skips the PSD eigencheck; for internal steps that
  // produce valid states by construction (projections, mixtures).
  static QuantumState mixed_unchecked(std::size_t n, CMatrix density);

  std::size_t num_qubits() const { return n_; }
  std::size_t dim() const { return std::size_t(1) << n_; }
  bool is_pure() const { return pure_.has_value(); }

  const CVector& amplitudes() const;
  // Density-matrix view; materializes |psi><psi| for pure states.
  CMatrix density() const;

  bool approx_equal(const QuantumState& o, double tol = 1e-9) const;

 private:
  std::size_t n_ = 0;
  std::optional<CVector> pure_;
  std::optional<CMatrix> rho_;
};

// POVM element: Hermitian with spectrum in [0, 1] (within kValidityTol).
class ObservableElement {
 public:
  static ObservableElement validate(CMatrix m);
  static ObservableElement identity(std::size_t n);

  const CMatrix& matrix() const { return m_; }
  std::size_t num_qubits() const { return n_; }

 private:
  ObservableElement(std::size_t n, CMatrix m) : n_(n), m_(std::move(m)) {}
  std::size_t n_;
  CMatrix m_;
};

QuantumState plus_state(std::size_t n);
QuantumState basis_state(std::size_t n, std::uint64_t index);
QuantumState maximally_mixed_state(std::size_t n);

QuantumState apply_cz(const QuantumState& s, std::size_t i, std::size_t j);

// Apply a unitary on the listed target qubits (targets[0] is the most
// significant index of u's space). u must be unitary within 1e-9.
QuantumState apply_unitary(const QuantumState& s, const CMatrix& u,
                           const std::vector<std::size_t>& targets);

QuantumState apply_pauli(const QuantumState& s, const PauliString& p);

struct MeasureResult {
  int outcome;  // +1 or -1
  QuantumState post;
  double probability;  // Born probability of the sampled outcome
};

// Projective measurement of a real-signed Pauli observable.
MeasureResult measure_pauli(const QuantumState& s, const PauliString& p, Rng& rng);

// Born probability of outcome +1, Tr((I+P)/2 rho).
double pauli_plus_probability(const QuantumState& s, const PauliString& p);

double expectation(const QuantumState& s, const ObservableElement& m);
double expectation(const QuantumState& s, const CMatrix& m);

// Schatten-1 distance; tau may be any Hermitian matrix (e.g. an
// unnormalized projection of a state).
double trace_norm_distance(const QuantumState& rho, const QuantumState& tau);
double trace_norm_distance(const QuantumState& rho, const CMatrix& tau);

// Trace out all qubits not in `keep` (ascending); kept qubits are relabeled
// 0..k-1 in the same order.
QuantumState partial_trace(const QuantumState& s, const std::vector<std::size_t>& keep);

double fidelity_with_pure(const QuantumState& s, const CVector& target);

// Haar-random pure state / Hilbert-Schmidt random density matrix.
QuantumState random_pure_state(std::size_t n, Rng& rng);
QuantumState random_mixed_state(std::size_t n, Rng& rng);
// Random POVM element: random eigenbasis, eigenvalues uniform in [0, 1].
ObservableElement random_observable(std::size_t n, Rng& rng);

// Named gate matrices: I, X, Y, Z, H, S, T, CZ, CNOT, SWAP and the
// one-parameter RX, RY, RZ, P (phase) families.
CMatrix gate_matrix(const std::string& name, std::optional<double> angle = {});

}  // namespace qamsim

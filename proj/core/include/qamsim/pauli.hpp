// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qamsim/linalg.hpp"
#include "qamsim/rng.hpp"

namespace qamsim {

// Phase-tracked element of the N-fold Pauli group in symplectic form.
//
// The stored operator is  i^phase_exp * tensor_j X^{x_j} Z^{z_j}  with
// phase_exp mod 4. The letter Y on qubit j is (x_j, z_j) = (1, 1) plus one
// factor of i folded into phase_exp, so products reduce to pure integer
// arithmetic on the exponent. Qubit 0 is the most significant bit of basis
// state labels, globally.
class PauliString {
 public:
  PauliString() = default;
  static PauliString identity(std::size_t n);
  // letter in {I, X, Y, Z} on `qubit`, identity elsewhere.
  static PauliString single(std::size_t n, std::size_t qubit, char letter);
  // "+XZ", "-YY", "iX", "-iZZ"; an omitted sign means '+'.
  static PauliString from_string(const std::string& text);

  std::size_t num_qubits() const { return n_; }
  int phase_exp() const { return phase_exp_; }
  bool x_bit(std::size_t q) const { return x_[q] != 0; }
  bool z_bit(std::size_t q) const { return z_[q] != 0; }

  // True when the display phase is +1 or -1 (a Hermitian involution).
  bool has_real_sign() const;
  // +1 or -1; only meaningful when has_real_sign().
  int sign() const;

  PauliString negated() const;
  PauliString adjoint() const;

  bool operator==(const PauliString& o) const;

  std::string str() const;

  std::size_t weight() const;  // number of non-identity sites

  // Index-mapped action on a 2^n amplitude vector / 2^n x 2^n matrix.
  CVector apply(const CVector& v) const;
  CMatrix apply_left(const CMatrix& m) const;   // P * M
  CMatrix apply_right(const CMatrix& m) const;  // M * P

  CMatrix dense_matrix(std::size_t max_qubits = 16) const;

  friend PauliString pauli_mul(const PauliString& p, const PauliString& q);
  friend bool commutes(const PauliString& p, const PauliString& q);

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> x_;
  std::vector<std::uint8_t> z_;
  int phase_exp_ = 0;  // power of i, mod 4

  std::uint64_t x_mask() const;
  std::uint64_t z_mask() const;
};

// Exact group product p*q.
PauliString pauli_mul(const PauliString& p, const PauliString& q);

// Symplectic inner product == 0.
bool commutes(const PauliString& p, const PauliString& q);

// n-bit subset choice k over a generator list.
struct SubsetSelector {
  std::vector<std::uint8_t> bits;

  static SubsetSelector from_index(std::size_t count, std::uint64_t index);
  static SubsetSelector random(std::size_t count, Rng& rng);
};

// Validated independent commuting generator set; the generated group does
// not contain -I (signs are +/-1 only and generators are GF(2)-independent).
class StabilizerGroup {
 public:
  // Throws Error{NonCommuting, Dependent, ImaginaryPhase, ...} on invalid input.
  static StabilizerGroup validate(std::vector<PauliString> generators);

  std::size_t num_qubits() const { return n_; }
  std::size_t num_generators() const { return generators_.size(); }
  const std::vector<PauliString>& generators() const { return generators_; }
  const PauliString& generator(std::size_t j) const { return generators_[j]; }

  // s_k = prod_j g_j^{k_j}; sign is always +/-1 for a valid group.
  PauliString subset_product(const SubsetSelector& k) const;

 private:
  StabilizerGroup(std::size_t n, std::vector<PauliString> gens)
      : n_(n), generators_(std::move(gens)) {}
  std::size_t n_ = 0;
  std::vector<PauliString> generators_;
};

PauliString subset_product(const StabilizerGroup& g, const SubsetSelector& k);

}  // namespace qamsim

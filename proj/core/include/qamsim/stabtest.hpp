// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>

#include "qamsim/densesim.hpp"
#include "qamsim/pauli.hpp"

namespace qamsim {

// Codespace projector Lambda = prod_j (I + g_j)/2. Hermitian, idempotent,
// rank 2^{N - n} for n independent generators on N qubits.
struct LambdaProjector {
  CMatrix matrix;
  std::size_t num_qubits;
  std::size_t num_generators;

  std::size_t expected_rank() const {
    return std::size_t(1) << (num_qubits - num_generators);
  }
};

LambdaProjector lambda_projector(const StabilizerGroup& g);

// One round: sample k uniformly, measure s_k, pass on outcome +1.
bool run_test_round(const QuantumState& rho, const StabilizerGroup& g, Rng& rng);

struct TestReport {
  std::uint64_t rounds = 0;
  std::uint64_t passes = 0;
  double sampled_pass_rate = 0.0;  // 0 when rounds == 0
  std::optional<double> exact_pass_probability;
  double epsilon_budget = 0.0;
};

TestReport run_test_rounds(const QuantumState& rho, const StabilizerGroup& g,
                           std::uint64_t rounds, Rng& rng, double epsilon_budget = 0.0);

// p_pass = 2^{-n} sum_k Tr((I + s_k)/2 rho). Enumerates subsets for small
// generator counts and otherwise uses the algebraically equal form
// (1 + Tr(Lambda rho))/2. The two routes are exposed separately so tests can
// hold them against each other.
double exact_pass_probability(const QuantumState& rho, const StabilizerGroup& g);
double pass_probability_by_enumeration(const QuantumState& rho, const StabilizerGroup& g);
double pass_probability_by_lambda(const QuantumState& rho, const StabilizerGroup& g);

// sigma = Lambda rho Lambda / Tr(Lambda rho); fails with ZeroOverlap when
// the normalization would be meaningless.
QuantumState nearest_stabilized_state(const QuantumState& rho, const StabilizerGroup& g);

constexpr double kZeroOverlapTol = 1e-12;

struct GentleReport {
  double lhs;  // || rho - Lambda rho Lambda ||_1
  double rhs;  // 2 sqrt(1 - Tr(Lambda rho))
  bool holds;
};

GentleReport gentle_measurement_check(const QuantumState& rho, const StabilizerGroup& g);

struct BoundsReport {
  double lower;   // Tr(M sigma)(1 - 2 eps) - 2 sqrt(2 eps)
  double actual;  // Tr(M rho)
  double upper;   // Tr(M sigma) + 2 sqrt(2 eps)
  double epsilon;
  double pass_probability;
  bool holds;
};

// Requires p_pass >= 1 - eps; otherwise fails with HypothesisViolated.
BoundsReport closeness_bounds(const QuantumState& rho, const StabilizerGroup& g,
                              const ObservableElement& m, double eps);

struct IdentityReport {
  double lhs;  // p_pass by subset enumeration
  double rhs;  // (1 + Tr(Lambda rho))/2
  bool holds;
};

IdentityReport pass_probability_identity_check(const QuantumState& rho,
                                               const StabilizerGroup& g);

}  // namespace qamsim

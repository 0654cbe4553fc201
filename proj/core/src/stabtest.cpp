// SPDX-License-Identifier: Apache-2.0
#include "qamsim/stabtest.hpp"

#include <cmath>
#include <string>

#include "qamsim/errors.hpp"

namespace qamsim {

LambdaProjector lambda_projector(const StabilizerGroup& g) {
  const std::size_t n = g.num_qubits();
  if (n > static_cast<std::size_t>(dense_caps().mixed_qubits))
    fail(ErrorKind::CapExceeded, "lambda_projector: qubit cap exceeded");
  const std::size_t dim = std::size_t(1) << n;
  CMatrix lambda = CMatrix::identity(dim);
  for (const PauliString& gen : g.generators()) {
    // Lambda <- Lambda (I + g)/2, built with the index-mapped Pauli action.
    CMatrix lg = gen.apply_right(lambda);
    lambda = (lambda + lg) * cplx(0.5, 0.0);
  }
  return LambdaProjector{std::move(lambda), n, g.num_generators()};
}

bool run_test_round(const QuantumState& rho, const StabilizerGroup& g, Rng& rng) {
  if (rho.num_qubits() != g.num_qubits())
    fail(ErrorKind::DimensionMismatch, "test round: state / group qubit mismatch");
  SubsetSelector k = SubsetSelector::random(g.num_generators(), rng);
  PauliString sk = g.subset_product(k);
  MeasureResult r = measure_pauli(rho, sk, rng);
  return r.outcome == +1;
}

TestReport run_test_rounds(const QuantumState& rho, const StabilizerGroup& g,
                           std::uint64_t rounds, Rng& rng, double epsilon_budget) {
  TestReport rep;
  rep.rounds = rounds;
  rep.epsilon_budget = epsilon_budget;
  for (std::uint64_t i = 0; i < rounds; ++i)
    if (run_test_round(rho, g, rng)) ++rep.passes;
  rep.sampled_pass_rate =
      rounds == 0 ? 0.0 : static_cast<double>(rep.passes) / static_cast<double>(rounds);
  rep.exact_pass_probability = exact_pass_probability(rho, g);
  return rep;
}

double pass_probability_by_enumeration(const QuantumState& rho, const StabilizerGroup& g) {
  const std::size_t n = g.num_generators();
  if (n > 20) fail(ErrorKind::CapExceeded, "enumeration: too many generators");
  double acc = 0.0;
  for (std::uint64_t idx = 0; idx < (1ull << n); ++idx) {
    PauliString sk = g.subset_product(SubsetSelector::from_index(n, idx));
    acc += pauli_plus_probability(rho, sk);
  }
  return acc / static_cast<double>(1ull << n);
}

double pass_probability_by_lambda(const QuantumState& rho, const StabilizerGroup& g) {
  LambdaProjector lambda = lambda_projector(g);
  return 0.5 * (1.0 + expectation(rho, lambda.matrix));
}

double exact_pass_probability(const QuantumState& rho, const StabilizerGroup& g) {
  if (rho.num_qubits() != g.num_qubits())
    fail(ErrorKind::DimensionMismatch, "pass probability: qubit mismatch");
  if (g.num_generators() <= 12) return pass_probability_by_enumeration(rho, g);
  return pass_probability_by_lambda(rho, g);
}

QuantumState nearest_stabilized_state(const QuantumState& rho, const StabilizerGroup& g) {
  LambdaProjector lambda = lambda_projector(g);
  if (rho.num_qubits() != lambda.num_qubits)
    fail(ErrorKind::DimensionMismatch, "nearest stabilized: qubit mismatch");
  CMatrix lrl = lambda.matrix * rho.density() * lambda.matrix;
  double tr = lrl.trace().real();
  if (tr <= kZeroOverlapTol)
    fail(ErrorKind::ZeroOverlap,
         "ZeroOverlap: Tr(Lambda rho) = " + std::to_string(tr) +
             " is numerically zero; state is orthogonal to the codespace");
  lrl *= cplx(1.0 / tr, 0.0);
  return QuantumState::mixed_unchecked(rho.num_qubits(), std::move(lrl));
}

GentleReport gentle_measurement_check(const QuantumState& rho, const StabilizerGroup& g) {
  LambdaProjector lambda = lambda_projector(g);
  if (rho.num_qubits() != lambda.num_qubits)
    fail(ErrorKind::DimensionMismatch, "gentle check: qubit mismatch");
  CMatrix rho_m = rho.density();
  CMatrix lrl = lambda.matrix * rho_m * lambda.matrix;
  double overlap = (lambda.matrix * rho_m).trace().real();
  GentleReport rep;
  rep.lhs = trace_norm_hermitian(rho_m - lrl);
  rep.rhs = 2.0 * std::sqrt(std::max(0.0, 1.0 - overlap));
  rep.holds = rep.lhs <= rep.rhs + kValidityTol;
  return rep;
}

BoundsReport closeness_bounds(const QuantumState& rho, const StabilizerGroup& g,
                              const ObservableElement& m, double eps) {
  if (m.num_qubits() != rho.num_qubits())
    fail(ErrorKind::DimensionMismatch, "closeness bounds: observable qubit mismatch");
  const double p_pass = exact_pass_probability(rho, g);
  if (p_pass < 1.0 - eps - kAlgebraTol)
    fail(ErrorKind::HypothesisViolated,
         "HypothesisViolated: p_pass = " + std::to_string(p_pass) + " < 1 - eps = " +
             std::to_string(1.0 - eps));
  QuantumState sigma = nearest_stabilized_state(rho, g);
  const double m_sigma = expectation(sigma, m);
  const double slack = 2.0 * std::sqrt(2.0 * eps);
  BoundsReport rep;
  rep.epsilon = eps;
  rep.pass_probability = p_pass;
  rep.actual = expectation(rho, m);
  rep.lower = m_sigma * (1.0 - 2.0 * eps) - slack;
  rep.upper = m_sigma + slack;
  rep.holds = rep.lower <= rep.actual + kValidityTol && rep.actual <= rep.upper + kValidityTol;
  return rep;
}

IdentityReport pass_probability_identity_check(const QuantumState& rho,
                                               const StabilizerGroup& g) {
  IdentityReport rep;
  rep.lhs = pass_probability_by_enumeration(rho, g);
  rep.rhs = pass_probability_by_lambda(rho, g);
  rep.holds = std::abs(rep.lhs - rep.rhs) <= kValidityTol;
  return rep;
}

}  // namespace qamsim

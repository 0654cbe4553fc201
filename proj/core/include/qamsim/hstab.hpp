// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qamsim/densesim.hpp"
#include "qamsim/pauli.hpp"
#include "qamsim/protocol.hpp"
#include "qamsim/stabtest.hpp"

namespace qamsim {

// Decision-problem instance: maximize Tr(M rho) over states stabilized by g,
// deciding >= a against <= b.
struct HstabInstance {
  StabilizerGroup group;
  ObservableElement m;
  double a;
  double b;
};

HstabInstance make_hstab_instance(StabilizerGroup group, ObservableElement m, double a,
                                  double b);

// max{Tr(M rho) : rho stabilized by g} = lambda_max(Lambda M Lambda).
double h_stab(const HstabInstance& inst);

// Independent lower-bound oracle: randomized search over pure codespace
// states (i.i.d. draws plus perturbations of the incumbent). Never exceeds
// the exact value; approaches it as the sample budget grows.
double h_stab_sampling_oracle(const HstabInstance& inst, std::size_t samples, Rng& rng);

// The codespace state attaining h: top eigenvector of Lambda M Lambda.
QuantumState h_stab_argmax_state(const HstabInstance& inst);

// Parameter schedule of the two-branch verification protocol:
// eps = (a-b)^2/32, delta = 2 sqrt(2 eps), q* = eps/(1 + eps - b - delta),
// which equalizes the two no-case bounds.
struct QmaParams {
  double a, b;
  double eps;
  double delta;
  double q_star;
  double alpha;   // q* a + (1 - q*)
  double beta1;   // q* + (1 - q*)(1 - eps)
  double beta2;   // q*(b + delta) + (1 - q*)
  double delta1;  // alpha - beta1
  double delta2;  // alpha - beta2
};

QmaParams qma_params(double a, double b);

struct QmaVerifyReport {
  std::uint64_t rounds = 0;
  std::uint64_t accepts = 0;
  double rate = 0.0;
  double std_error = 0.0;
  double exact_expectation = 0.0;  // q Tr(M rho) + (1-q) p_pass(rho)
};

// Monte Carlo run of the two-branch protocol against a fixed prover state.
QmaVerifyReport qma_verify(const HstabInstance& inst, const QuantumState& prover,
                           const QmaParams& params, std::uint64_t rounds, Rng& rng);

struct QmaSoundnessReport {
  double h_value;        // exact h for the instance (must be <= b)
  double optimal_value;  // lambda_max(q* M + (1-q*) E_test)
  double beta1;
  double beta2;
  double bound;          // max(beta1, beta2)
  bool holds;            // optimal_value <= bound + tol
};

// Requires a no-instance (h <= b); fails with Inapplicable otherwise.
QmaSoundnessReport qma_soundness_check(const HstabInstance& inst, const QmaParams& params);

// Random no-instance at the given size: random graph-derived group (with
// random generator subset and signs) and a random POVM element rescaled so
// that h <= b by construction.
HstabInstance random_no_instance(std::size_t n, double a, double b, Rng& rng);

struct ReductionReport {
  double h_value;               // h over the extended-generator codespace
  double best_witness_value;    // lambda_max of the circuit acceptance operator
  std::size_t codespace_rank;   // must equal 2^m
  std::size_t witness_dim;      // 2^m
  double max_roundtrip_deficit; // codespace basis -> witness -> reconnect
  bool holds;
};

// Numerical witness-connection correspondence: stabilized states of the
// extended generators are exactly the connected witness states, so h over
// that codespace equals the circuit's best witness acceptance.
ReductionReport reduction_witness_demo(const ConnectedSystem& sys,
                                       const VerifierCircuit& circuit, std::uint64_t y);

}  // namespace qamsim

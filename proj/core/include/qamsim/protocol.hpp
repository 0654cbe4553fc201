// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qamsim/densesim.hpp"
#include "qamsim/graphstate.hpp"
#include "qamsim/mbqc.hpp"
#include "qamsim/stabtest.hpp"

namespace qamsim {

// Scalar schedule of the single-measurement protocol: test-failure budget
// eps, closeness slack delta = 2 sqrt(2 eps), computation-branch probability
// q = eps/(1 + eps - delta), and the completeness/soundness pair
// alpha = q a + (1-q), beta = q b + q delta + (1-q).
struct ProtocolParams {
  double a = 0.0;
  double b = 0.0;
  double eps = 0.0;
  double delta = 0.0;
  double q = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  double gap = 0.0;    // alpha - beta = q (a - b - delta)
  int x_size = 0;      // 0 when eps was supplied directly
};

// eps = 1/(128 x^2).
ProtocolParams make_params(int x_size, double a, double b);
ProtocolParams make_params_with_eps(double eps, double a, double b);

// The reference closed-form lower bound 1/(12 * 129 * x^2) for the gap at
// (a, b) = (2/3, 1/3); the exact gap dominates it.
double reference_gap_bound(int x_size);

struct Gate {
  std::string name;
  std::vector<std::size_t> targets;
  std::optional<double> angle;
  std::optional<CMatrix> matrix;  // raw unitary; overrides name when present

  CMatrix resolve() const;
};

// Per-challenge verifier unitary A_y on m + v qubits (witness register
// first), with acceptance = measuring |1> on the output qubit. Ancillas
// start in |+>^v.
class VerifierCircuit {
 public:
  VerifierCircuit(std::size_t s_bits, std::size_t m_witness, std::size_t v_ancilla,
                  std::size_t output_qubit, std::vector<std::vector<Gate>> gates_per_y);

  std::size_t s_bits() const { return s_; }
  std::size_t num_challenges() const { return std::size_t(1) << s_; }
  std::size_t witness_qubits() const { return m_; }
  std::size_t ancilla_qubits() const { return v_; }
  std::size_t output_qubit() const { return output_; }
  const std::vector<std::vector<Gate>>& gates() const { return gates_per_y_; }

  CMatrix unitary_for(std::uint64_t y) const;  // 2^{m+v}, checked unitary
  // POVM element on the witness register:
  // (I tensor <+^v|) A^dagger Pi_1 A (I tensor |+^v>).
  CMatrix witness_acceptance_operator(std::uint64_t y) const;
  // Best single-witness acceptance for challenge y.
  double best_witness_acceptance(std::uint64_t y) const;

 private:
  std::size_t s_, m_, v_, output_;
  std::vector<std::vector<Gate>> gates_per_y_;
};

struct QamAcceptanceReport {
  double value = 0.0;
  bool sampled = false;  // true when s was too large to enumerate
  std::uint64_t challenges_used = 0;
};

// p_acc = 2^{-s} sum_y ||Pi_1 A_y (|psi_y> tensor |+^v>)||^2. Enumerates all
// challenges up to s = 12; beyond that it samples and flags the report.
QamAcceptanceReport qam_acceptance(const VerifierCircuit& circuit,
                                   const std::function<QuantumState(std::uint64_t)>& witness,
                                   Rng* rng = nullptr,
                                   std::uint64_t sample_count = 4096);

struct MerlinStrategy {
  enum class Kind { Honest, Depolarizing, FixedState, Optimal };
  Kind kind = Kind::Honest;
  double mu = 0.0;                    // Depolarizing mixing weight
  std::optional<QuantumState> fixed;  // FixedState payload

  static MerlinStrategy honest() { return {}; }
  static MerlinStrategy depolarizing(double mu);
  static MerlinStrategy fixed_state(QuantumState s);
  static MerlinStrategy optimal();
};

struct MbqcSpec {
  MeasurementPattern pattern;
};

// A concrete protocol instance: the connected system Merlin is supposed to
// prepare, the verifier circuit, the parameter schedule, and the honest
// per-challenge witnesses. `mbqc` registers a measurement pattern whose
// output register carries the m witness qubits for the readout.
struct ProtocolInstance {
  ConnectedSystem system;
  VerifierCircuit circuit;
  ProtocolParams params;
  std::vector<QuantumState> honest_witness;  // size 2^s
  std::optional<MbqcSpec> mbqc;
  std::string default_strategy = "honest";   // instance-file strategy selection

  std::size_t total_qubits() const { return system.total_qubits(); }
};

// Test-branch POVM element (I + Lambda_ext)/2 on the N+m received qubits;
// pass probability of the stabilizer test is Tr of it against the state.
ObservableElement test_branch_operator(const ConnectedSystem& sys);

// Computation-branch POVM element on the received qubits: undo the connect
// CZ layer and apply the circuit acceptance operator to the witness register.
CMatrix computation_branch_operator(const ConnectedSystem& sys,
                                    const VerifierCircuit& circuit, std::uint64_t y);

// E_y = q E_acc,y + (1-q) E_test.
ObservableElement acceptance_operator(const ProtocolInstance& inst, std::uint64_t y);

// Max entrywise deviation between the subset-averaged test operator
// 2^{-N} sum_k s_k and Lambda_ext; algebraically zero.
double subset_average_identity_defect(const ConnectedSystem& sys);

// lambda_max(E_y): the exact optimal per-challenge cheating acceptance.
double optimal_cheat(const ProtocolInstance& inst, std::uint64_t y);
// The state achieving it.
QuantumState optimal_cheat_state(const ProtocolInstance& inst, std::uint64_t y);

QuantumState merlin_state(const ProtocolInstance& inst, const MerlinStrategy& strategy,
                          std::uint64_t y);

enum class RunMode { Direct, Mbqc };
enum class BranchKind { Computation, Test };

struct Transcript {
  std::uint64_t y = 0;
  BranchKind branch = BranchKind::Test;
  std::vector<std::uint8_t> k_bits;   // test branch
  int test_outcome = 0;               // +1 / -1, test branch
  std::vector<int> mbqc_outcomes;     // mbqc computation branch
  bool accept = false;
};

Transcript run_protocol_round(const ProtocolInstance& inst, const MerlinStrategy& strategy,
                              RunMode mode, Rng& rng);

struct RoundStats {
  std::uint64_t rounds = 0;
  std::uint64_t accepts = 0;
  double rate = 0.0;
  double std_error = 0.0;
};

RoundStats run_protocol_rounds(const ProtocolInstance& inst, const MerlinStrategy& strategy,
                               RunMode mode, std::uint64_t rounds, Rng& rng);

struct ChallengeRecord {
  std::uint64_t y;
  double p_computation;  // exact acceptance of the computation branch
  double p_test;         // exact stabilizer-test pass probability
  bool in_y1;            // p_test >= 1 - eps
};

struct AcceptanceBreakdown {
  std::vector<ChallengeRecord> per_challenge;
  double p_acc = 0.0;       // 2^{-s} sum_y [q p_comp + (1-q) p_test]
  double threshold = 0.0;   // 1 - eps
  std::size_t y1_count = 0;
  std::size_t y2_count = 0;
};

AcceptanceBreakdown soundness_breakdown(const ProtocolInstance& inst,
                                        const MerlinStrategy& strategy);

// Registered desk-scale instances: an edge graph with a one-qubit witness.
// The yes instance has honest circuit acceptance 0.925 >= 2/3 and a
// teleportation-wire measurement pattern; the no instance has best witness
// acceptance strictly below 1 on every challenge.
ProtocolInstance toy_yes_instance();
ProtocolInstance toy_no_instance();

// Exact best-witness QAM acceptance 2^{-s} sum_y lambda_max(E_wit,y).
double instance_exact_soundness(const VerifierCircuit& circuit);

}  // namespace qamsim

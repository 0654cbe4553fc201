// SPDX-License-Identifier: Apache-2.0
#include "qamsim/protocol.hpp"

#include <cmath>

#include "qamsim/errors.hpp"

namespace qamsim {

namespace {

ProtocolParams finish_params(double eps, double a, double b, int x_size) {
  if (!(a > b)) fail(ErrorKind::InvalidArgument, "params: need a > b");
  if (b < 0.0 || a > 1.0) fail(ErrorKind::InvalidArgument, "params: need 0 <= b < a <= 1");
  if (eps <= 0.0) fail(ErrorKind::InvalidArgument, "params: eps must be positive");
  const double delta = 2.0 * std::sqrt(2.0 * eps);
  if (delta >= 1.0 + eps)
    fail(ErrorKind::InvalidArgument,
         "params: delta = " + std::to_string(delta) + " >= 1 + eps; q is degenerate");
  ProtocolParams p;
  p.a = a;
  p.b = b;
  p.eps = eps;
  p.delta = delta;
  p.q = eps / (1.0 + eps - delta);
  p.alpha = p.q * a + (1.0 - p.q);
  p.beta = p.q * b + p.q * delta + (1.0 - p.q);
  p.gap = p.alpha - p.beta;
  p.x_size = x_size;
  const double identity = p.q - p.q * delta + p.q * eps - eps;
  if (std::abs(identity) > kAlgebraTol)
    fail(ErrorKind::InvalidArgument, "params: q - q delta + q eps - eps != 0");
  return p;
}

}  // namespace

ProtocolParams make_params(int x_size, double a, double b) {
  if (x_size < 1) fail(ErrorKind::InvalidArgument, "params: x_size must be >= 1");
  const double eps = 1.0 / (128.0 * static_cast<double>(x_size) * static_cast<double>(x_size));
  return finish_params(eps, a, b, x_size);
}

ProtocolParams make_params_with_eps(double eps, double a, double b) {
  return finish_params(eps, a, b, 0);
}

double reference_gap_bound(int x_size) {
  return 1.0 / (12.0 * 129.0 * static_cast<double>(x_size) * static_cast<double>(x_size));
}

CMatrix Gate::resolve() const {
  if (matrix) return *matrix;
  return gate_matrix(name, angle);
}

namespace {

// Embed a k-qubit unitary into the full 2^n space at the given targets
// (targets[0] most significant within u).
CMatrix expand_operator(const CMatrix& u, const std::vector<std::size_t>& targets,
                        std::size_t n) {
  const std::size_t k = targets.size();
  if (u.rows() != (std::size_t(1) << k) || u.rows() != u.cols())
    fail(ErrorKind::DimensionMismatch, "expand: matrix size != 2^#targets");
  std::vector<std::uint64_t> tbit(k);
  for (std::size_t t = 0; t < k; ++t) {
    if (targets[t] >= n) fail(ErrorKind::InvalidArgument, "expand: target out of range");
    tbit[t] = 1ull << (n - 1 - targets[t]);
  }
  std::uint64_t tmask = 0;
  for (auto b : tbit) tmask |= b;

  const std::size_t dim = std::size_t(1) << n;
  CMatrix full(dim, dim);
  auto sub_index = [&](std::uint64_t idx) {
    std::uint64_t g = 0;
    for (std::size_t t = 0; t < k; ++t)
      if (idx & tbit[t]) g |= 1ull << (k - 1 - t);
    return g;
  };
  for (std::uint64_t r = 0; r < dim; ++r) {
    const std::uint64_t rest = r & ~tmask;
    const std::uint64_t gr = sub_index(r);
    for (std::uint64_t gc = 0; gc < (std::uint64_t(1) << k); ++gc) {
      cplx val = u(gr, gc);
      if (val == cplx(0.0, 0.0)) continue;
      std::uint64_t c = rest;
      for (std::size_t t = 0; t < k; ++t)
        if ((gc >> (k - 1 - t)) & 1) c |= tbit[t];
      full(r, c) = val;
    }
  }
  return full;
}

}  // namespace

VerifierCircuit::VerifierCircuit(std::size_t s_bits, std::size_t m_witness,
                                 std::size_t v_ancilla, std::size_t output_qubit,
                                 std::vector<std::vector<Gate>> gates_per_y)
    : s_(s_bits), m_(m_witness), v_(v_ancilla), output_(output_qubit),
      gates_per_y_(std::move(gates_per_y)) {
  if (s_ > 20) fail(ErrorKind::CapExceeded, "circuit: challenge length too large");
  if (m_ < 1) fail(ErrorKind::InvalidArgument, "circuit: need at least one witness qubit");
  if (output_ >= m_ + v_)
    fail(ErrorKind::InvalidArgument, "circuit: output qubit out of range");
  if (gates_per_y_.size() != num_challenges())
    fail(ErrorKind::InvalidArgument, "circuit: need one gate list per challenge");
  for (std::uint64_t y = 0; y < num_challenges(); ++y) unitary_for(y);  // validates
}

CMatrix VerifierCircuit::unitary_for(std::uint64_t y) const {
  if (y >= num_challenges()) fail(ErrorKind::InvalidArgument, "circuit: challenge out of range");
  const std::size_t n = m_ + v_;
  CMatrix a = CMatrix::identity(std::size_t(1) << n);
  for (const Gate& g : gates_per_y_[y]) {
    CMatrix u = g.resolve();
    CMatrix defect = u.adjoint() * u - CMatrix::identity(u.rows());
    if (defect.max_abs() > kValidityTol)
      fail(ErrorKind::InvalidArgument, "circuit: gate " + g.name + " is not unitary");
    a = expand_operator(u, g.targets, n) * a;
  }
  return a;
}

CMatrix VerifierCircuit::witness_acceptance_operator(std::uint64_t y) const {
  const std::size_t n = m_ + v_;
  CMatrix a = unitary_for(y);
  CMatrix pi1(2, 2);
  pi1(1, 1) = 1.0;
  CMatrix proj = expand_operator(pi1, {output_}, n);
  CMatrix m_full = a.adjoint() * proj * a;

  const std::size_t wd = std::size_t(1) << m_;
  const std::size_t ad = std::size_t(1) << v_;
  CMatrix e(wd, wd);
  const double scale = 1.0 / static_cast<double>(ad);
  for (std::size_t i = 0; i < wd; ++i)
    for (std::size_t j = 0; j < wd; ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t p = 0; p < ad; ++p)
        for (std::size_t q = 0; q < ad; ++q) acc += m_full(i * ad + p, j * ad + q);
      e(i, j) = acc * scale;
    }
  return e;
}

double VerifierCircuit::best_witness_acceptance(std::uint64_t y) const {
  return lambda_max(witness_acceptance_operator(y));
}

QamAcceptanceReport qam_acceptance(const VerifierCircuit& circuit,
                                   const std::function<QuantumState(std::uint64_t)>& witness,
                                   Rng* rng, std::uint64_t sample_count) {
  QamAcceptanceReport rep;
  auto one = [&](std::uint64_t y) {
    QuantumState w = witness(y);
    if (w.num_qubits() != circuit.witness_qubits())
      fail(ErrorKind::DimensionMismatch, "qam_acceptance: witness register size mismatch");
    return expectation(w, circuit.witness_acceptance_operator(y));
  };
  if (circuit.s_bits() <= 12) {
    double acc = 0.0;
    for (std::uint64_t y = 0; y < circuit.num_challenges(); ++y) acc += one(y);
    rep.value = acc / static_cast<double>(circuit.num_challenges());
    rep.challenges_used = circuit.num_challenges();
    return rep;
  }
  if (rng == nullptr)
    fail(ErrorKind::CapExceeded, "qam_acceptance: s too large to enumerate and no rng given");
  double acc = 0.0;
  for (std::uint64_t i = 0; i < sample_count; ++i) {
    std::uint64_t y = rng->next_u64() & ((std::uint64_t(1) << circuit.s_bits()) - 1);
    acc += one(y);
  }
  rep.value = acc / static_cast<double>(sample_count);
  rep.sampled = true;
  rep.challenges_used = sample_count;
  return rep;
}

MerlinStrategy MerlinStrategy::depolarizing(double mu) {
  if (mu < 0.0 || mu > 1.0)
    fail(ErrorKind::InvalidArgument, "depolarizing strategy: mu outside [0,1]");
  MerlinStrategy s;
  s.kind = Kind::Depolarizing;
  s.mu = mu;
  return s;
}

MerlinStrategy MerlinStrategy::fixed_state(QuantumState st) {
  MerlinStrategy s;
  s.kind = Kind::FixedState;
  s.fixed = std::move(st);
  return s;
}

MerlinStrategy MerlinStrategy::optimal() {
  MerlinStrategy s;
  s.kind = Kind::Optimal;
  return s;
}

ObservableElement test_branch_operator(const ConnectedSystem& sys) {
  StabilizerGroup ext = extended_test_stabilizers(sys);
  LambdaProjector lambda = lambda_projector(ext);
  CMatrix e = (CMatrix::identity(lambda.matrix.rows()) + lambda.matrix) * cplx(0.5, 0.0);
  return ObservableElement::validate(std::move(e));
}

CMatrix computation_branch_operator(const ConnectedSystem& sys,
                                    const VerifierCircuit& circuit, std::uint64_t y) {
  if (circuit.witness_qubits() != sys.witness_size)
    fail(ErrorKind::DimensionMismatch,
         "computation operator: circuit witness register != system witness register");
  const std::size_t N = sys.graph_part.num_vertices();
  const std::size_t total = sys.total_qubits();
  CMatrix e_wit = circuit.witness_acceptance_operator(y);
  CMatrix full = kron(CMatrix::identity(std::size_t(1) << N), e_wit);
  // Conjugate by the connect-CZ layer, a diagonal of signs.
  const std::size_t dim = std::size_t(1) << total;
  std::vector<int> sign(dim, +1);
  for (auto [v, w] : sys.connect_edges) {
    const std::uint64_t mask =
        (1ull << (total - 1 - v)) | (1ull << (total - 1 - (N + w)));
    for (std::uint64_t b = 0; b < dim; ++b)
      if ((b & mask) == mask) sign[b] = -sign[b];
  }
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c)
      if (sign[r] != sign[c]) full(r, c) = -full(r, c);
  return full;
}

ObservableElement acceptance_operator(const ProtocolInstance& inst, std::uint64_t y) {
  const double q = inst.params.q;
  CMatrix e_acc = computation_branch_operator(inst.system, inst.circuit, y);
  CMatrix e_test = test_branch_operator(inst.system).matrix();
  CMatrix e = e_acc * cplx(q, 0.0) + e_test * cplx(1.0 - q, 0.0);
  return ObservableElement::validate(std::move(e));
}

double subset_average_identity_defect(const ConnectedSystem& sys) {
  StabilizerGroup ext = extended_test_stabilizers(sys);
  const std::size_t n = ext.num_generators();
  if (n > 16) fail(ErrorKind::CapExceeded, "identity defect: too many generators");
  const std::size_t dim = std::size_t(1) << ext.num_qubits();
  CMatrix avg(dim, dim);
  for (std::uint64_t idx = 0; idx < (1ull << n); ++idx) {
    PauliString sk = ext.subset_product(SubsetSelector::from_index(n, idx));
    avg += sk.dense_matrix(ext.num_qubits());
  }
  avg *= cplx(1.0 / static_cast<double>(1ull << n), 0.0);
  CMatrix lambda = lambda_projector(ext).matrix;
  return (avg - lambda).max_abs();
}

double optimal_cheat(const ProtocolInstance& inst, std::uint64_t y) {
  return lambda_max(acceptance_operator(inst, y).matrix());
}

QuantumState optimal_cheat_state(const ProtocolInstance& inst, std::uint64_t y) {
  EigenSystem sys = hermitian_eigensystem(acceptance_operator(inst, y).matrix());
  const std::size_t dim = sys.vectors.rows();
  CVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = sys.vectors(i, dim - 1);
  normalize(v);
  return QuantumState::pure(inst.total_qubits(), std::move(v));
}

QuantumState merlin_state(const ProtocolInstance& inst, const MerlinStrategy& strategy,
                          std::uint64_t y) {
  switch (strategy.kind) {
    case MerlinStrategy::Kind::Honest:
      return connect_witness(inst.honest_witness.at(y), inst.system);
    case MerlinStrategy::Kind::Depolarizing: {
      QuantumState honest = connect_witness(inst.honest_witness.at(y), inst.system);
      const std::size_t dim = honest.dim();
      CMatrix rho = honest.density() * cplx(1.0 - strategy.mu, 0.0);
      for (std::size_t i = 0; i < dim; ++i)
        rho(i, i) += strategy.mu / static_cast<double>(dim);
      return QuantumState::mixed_unchecked(inst.total_qubits(), std::move(rho));
    }
    case MerlinStrategy::Kind::FixedState: {
      if (!strategy.fixed) fail(ErrorKind::InvalidArgument, "fixed strategy without a state");
      if (strategy.fixed->num_qubits() != inst.total_qubits())
        fail(ErrorKind::DimensionMismatch, "fixed strategy: state size mismatch");
      return *strategy.fixed;
    }
    case MerlinStrategy::Kind::Optimal:
      return optimal_cheat_state(inst, y);
  }
  fail(ErrorKind::InvalidArgument, "unknown Merlin strategy");
}

namespace {

bool computation_branch_accepts(const ProtocolInstance& inst, const QuantumState& rho,
                                std::uint64_t y, RunMode mode, Rng& rng,
                                std::vector<int>* mbqc_outcomes) {
  if (mode == RunMode::Direct) {
    const double p = expectation(rho, computation_branch_operator(inst.system, inst.circuit, y));
    return rng.bernoulli(std::clamp(p, 0.0, 1.0));
  }
  if (!inst.mbqc)
    fail(ErrorKind::InvalidArgument, "mbqc mode: no measurement pattern registered");
  PatternResult pr = execute_pattern(rho, inst.mbqc->pattern, rng);
  if (mbqc_outcomes) *mbqc_outcomes = pr.outcomes;
  if (pr.post.num_qubits() != inst.circuit.witness_qubits())
    fail(ErrorKind::DimensionMismatch, "mbqc pattern: output register size mismatch");
  // Append the verifier's own |+>^v ancillas, run A_y, measure the output.
  QuantumState reg = pr.post;
  const std::size_t v = inst.circuit.ancilla_qubits();
  if (v > 0) {
    CMatrix anc = plus_state(v).density();
    reg = QuantumState::mixed_unchecked(reg.num_qubits() + v, kron(reg.density(), anc));
  }
  std::vector<std::size_t> all(reg.num_qubits());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  reg = apply_unitary(reg, inst.circuit.unitary_for(y), all);
  SingleQubitOutcome out =
      measure_single_qubit(reg, inst.circuit.output_qubit(), BasisSpec{BasisSpec::Plane::Z, 0.0}, rng);
  if (mbqc_outcomes) mbqc_outcomes->push_back(out.bit);
  return out.bit == 1;  // output qubit observed in |1>
}

}  // namespace

Transcript run_protocol_round(const ProtocolInstance& inst, const MerlinStrategy& strategy,
                              RunMode mode, Rng& rng) {
  Transcript t;
  t.y = rng.next_u64() & (inst.circuit.num_challenges() - 1);
  QuantumState rho = merlin_state(inst, strategy, t.y);
  if (rho.num_qubits() != inst.total_qubits())
    fail(ErrorKind::DimensionMismatch, "protocol round: Merlin state size mismatch");

  if (rng.bernoulli(inst.params.q)) {
    t.branch = BranchKind::Computation;
    t.accept = computation_branch_accepts(inst, rho, t.y, mode, rng, &t.mbqc_outcomes);
    return t;
  }
  t.branch = BranchKind::Test;
  StabilizerGroup ext = extended_test_stabilizers(inst.system);
  SubsetSelector k = SubsetSelector::random(ext.num_generators(), rng);
  t.k_bits = k.bits;
  MeasureResult r = measure_pauli(rho, ext.subset_product(k), rng);
  t.test_outcome = r.outcome;
  t.accept = r.outcome == +1;
  return t;
}

RoundStats run_protocol_rounds(const ProtocolInstance& inst, const MerlinStrategy& strategy,
                               RunMode mode, std::uint64_t rounds, Rng& rng) {
  RoundStats st;
  st.rounds = rounds;
  for (std::uint64_t i = 0; i < rounds; ++i)
    if (run_protocol_round(inst, strategy, mode, rng).accept) ++st.accepts;
  if (rounds > 0) {
    st.rate = static_cast<double>(st.accepts) / static_cast<double>(rounds);
    st.std_error = std::sqrt(std::max(st.rate * (1.0 - st.rate), 1e-12) /
                             static_cast<double>(rounds));
  }
  return st;
}

AcceptanceBreakdown soundness_breakdown(const ProtocolInstance& inst,
                                        const MerlinStrategy& strategy) {
  AcceptanceBreakdown bd;
  bd.threshold = 1.0 - inst.params.eps;
  const ObservableElement e_test = test_branch_operator(inst.system);
  double acc = 0.0;
  for (std::uint64_t y = 0; y < inst.circuit.num_challenges(); ++y) {
    QuantumState rho = merlin_state(inst, strategy, y);
    ChallengeRecord rec;
    rec.y = y;
    rec.p_computation =
        expectation(rho, computation_branch_operator(inst.system, inst.circuit, y));
    rec.p_test = expectation(rho, e_test);
    rec.in_y1 = rec.p_test >= bd.threshold;
    if (rec.in_y1)
      ++bd.y1_count;
    else
      ++bd.y2_count;
    acc += inst.params.q * rec.p_computation + (1.0 - inst.params.q) * rec.p_test;
    bd.per_challenge.push_back(rec);
  }
  bd.p_acc = acc / static_cast<double>(inst.circuit.num_challenges());
  return bd;
}

double instance_exact_soundness(const VerifierCircuit& circuit) {
  double acc = 0.0;
  for (std::uint64_t y = 0; y < circuit.num_challenges(); ++y)
    acc += circuit.best_witness_acceptance(y);
  return acc / static_cast<double>(circuit.num_challenges());
}

ProtocolInstance toy_yes_instance() {
  Graph g(2, {{0, 1}});
  ConnectedSystem sys(std::move(g), 1, {{0, 0}});
  // y = 0: A = H, honest witness |->; y = 1: A = I, honest witness with
  // |<1|psi>|^2 = 0.85. Honest circuit acceptance (1 + 0.85)/2 = 0.925.
  std::vector<std::vector<Gate>> gates(2);
  gates[0] = {Gate{"H", {0}, {}, {}}};
  gates[1] = {};
  VerifierCircuit circuit(1, 1, 0, 0, std::move(gates));

  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  std::vector<QuantumState> honest;
  honest.push_back(QuantumState::pure(1, {cplx(inv_sqrt2, 0.0), cplx(-inv_sqrt2, 0.0)}));
  honest.push_back(QuantumState::pure(1, {cplx(std::sqrt(0.15), 0.0),
                                          cplx(std::sqrt(0.85), 0.0)}));

  MbqcSpec mbqc;
  // Teleport the witness (qubit 2) down the wire onto vertex 1.
  mbqc.pattern.steps = {MeasureStep{2, BasisSpec{BasisSpec::Plane::XY, 0.0}, {}},
                        MeasureStep{0, BasisSpec{BasisSpec::Plane::XY, 0.0}, {}}};
  mbqc.pattern.output_qubits = {1};
  mbqc.pattern.byproducts = {ByproductRule{1, {1}, {0}}};

  return ProtocolInstance{std::move(sys), std::move(circuit), make_params(1, 2.0 / 3.0, 1.0 / 3.0),
                          std::move(honest), std::move(mbqc)};
}

ProtocolInstance toy_no_instance() {
  Graph g(2, {{0, 1}});
  ConnectedSystem sys(std::move(g), 1, {{0, 0}});
  // Output is an ancilla the witness can only partially steer: best witness
  // acceptance is (1 + sin(pi/4))/2 for y = 0 and (1 + sin(pi/3))/2 for y = 1.
  std::vector<std::vector<Gate>> gates(2);
  gates[0] = {Gate{"CRY", {0, 1}, M_PI / 4.0, {}}};
  gates[1] = {Gate{"RY", {1}, M_PI / 3.0, {}}};
  VerifierCircuit circuit(1, 1, 1, 1, std::move(gates));

  std::vector<QuantumState> honest;
  honest.push_back(basis_state(1, 1));
  honest.push_back(plus_state(1));

  // |x| = 3 keeps delta = 1/12 small enough that the beta bound sits
  // strictly below 1, so the soundness check is not vacuous.
  return ProtocolInstance{std::move(sys), std::move(circuit), make_params(3, 2.0 / 3.0, 1.0 / 3.0),
                          std::move(honest), std::nullopt};
}

}  // namespace qamsim

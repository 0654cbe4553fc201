// SPDX-License-Identifier: Apache-2.0
#include "qamsim/hstab.hpp"

#include <algorithm>
#include <cmath>

#include "qamsim/errors.hpp"
#include "qamsim/graphstate.hpp"

namespace qamsim {

HstabInstance make_hstab_instance(StabilizerGroup group, ObservableElement m, double a,
                                  double b) {
  if (m.num_qubits() != group.num_qubits())
    fail(ErrorKind::DimensionMismatch, "hstab instance: observable / group size mismatch");
  if (!(0.0 <= b && b < a && a <= 1.0))
    fail(ErrorKind::InvalidArgument, "hstab instance: need 0 <= b < a <= 1");
  return HstabInstance{std::move(group), std::move(m), a, b};
}

double h_stab(const HstabInstance& inst) {
  LambdaProjector lambda = lambda_projector(inst.group);
  CMatrix lml = lambda.matrix * inst.m.matrix() * lambda.matrix;
  // M >= 0, so the codespace optimum is the top eigenvalue of Lambda M Lambda
  // (zero eigenvalues from outside the codespace cannot exceed it).
  return std::max(0.0, lambda_max(lml));
}

namespace {

// Orthonormal codespace basis: eigenvectors of Lambda with eigenvalue ~1.
std::vector<CVector> codespace_basis(const StabilizerGroup& g) {
  LambdaProjector lambda = lambda_projector(g);
  EigenSystem sys = hermitian_eigensystem(lambda.matrix);
  std::vector<CVector> basis;
  const std::size_t dim = lambda.matrix.rows();
  for (std::size_t k = 0; k < dim; ++k) {
    if (std::abs(sys.values[k] - 1.0) < 1e-6) {
      CVector v(dim);
      for (std::size_t i = 0; i < dim; ++i) v[i] = sys.vectors(i, k);
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

}  // namespace

double h_stab_sampling_oracle(const HstabInstance& inst, std::size_t samples, Rng& rng) {
  std::vector<CVector> basis = codespace_basis(inst.group);
  if (basis.empty()) return 0.0;
  const std::size_t d = basis.size();
  const std::size_t dim = basis[0].size();

  auto value_of = [&](const CVector& coeff) {
    CVector psi(dim, cplx(0.0, 0.0));
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t i = 0; i < dim; ++i) psi[i] += coeff[k] * basis[k][i];
    return inner(psi, inst.m.matrix() * psi).real();
  };

  CVector best = random_gaussian_vector(d, rng);
  normalize(best);
  double best_val = value_of(best);
  // Half fresh draws, half shrinking perturbations of the incumbent.
  const std::size_t fresh = samples / 2;
  for (std::size_t t = 1; t < fresh; ++t) {
    CVector c = random_gaussian_vector(d, rng);
    normalize(c);
    double v = value_of(c);
    if (v > best_val) {
      best_val = v;
      best = std::move(c);
    }
  }
  for (std::size_t t = fresh; t < samples; ++t) {
    double step = 0.5 * std::pow(0.001 / 0.5, static_cast<double>(t - fresh) /
                                                  std::max<std::size_t>(1, samples - fresh));
    CVector c = best;
    CVector g = random_gaussian_vector(d, rng);
    for (std::size_t k = 0; k < d; ++k) c[k] += step * g[k];
    normalize(c);
    double v = value_of(c);
    if (v > best_val) {
      best_val = v;
      best = std::move(c);
    }
  }
  return best_val;
}

QuantumState h_stab_argmax_state(const HstabInstance& inst) {
  LambdaProjector lambda = lambda_projector(inst.group);
  CMatrix lml = lambda.matrix * inst.m.matrix() * lambda.matrix;
  EigenSystem sys = hermitian_eigensystem(lml);
  const std::size_t dim = lml.rows();
  CVector v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = sys.vectors(i, dim - 1);
  // Re-project in case the top eigenvalue is degenerate with junk outside
  // the codespace (possible when M annihilates it).
  v = lambda.matrix * v;
  if (norm(v) < 1e-9) {
    // h = 0 on the codespace; any codespace state attains it.
    std::vector<CVector> basis = codespace_basis(inst.group);
    if (basis.empty()) fail(ErrorKind::InvalidArgument, "argmax: empty codespace");
    v = basis.front();
  }
  normalize(v);
  return QuantumState::pure(inst.group.num_qubits(), std::move(v));
}

QmaParams qma_params(double a, double b) {
  if (!(0.0 <= b && b < a && a <= 1.0))
    fail(ErrorKind::InvalidArgument, "qma params: need 0 <= b < a <= 1");
  QmaParams p;
  p.a = a;
  p.b = b;
  p.eps = (a - b) * (a - b) / 32.0;
  p.delta = 2.0 * std::sqrt(2.0 * p.eps);
  const double denom = 1.0 + p.eps - b - p.delta;
  if (denom <= 0.0)
    fail(ErrorKind::InvalidArgument, "qma params: degenerate denominator 1 + eps - b - delta");
  p.q_star = p.eps / denom;
  p.alpha = p.q_star * a + (1.0 - p.q_star);
  p.beta1 = p.q_star + (1.0 - p.q_star) * (1.0 - p.eps);
  p.beta2 = p.q_star * (b + p.delta) + (1.0 - p.q_star);
  p.delta1 = p.alpha - p.beta1;
  p.delta2 = p.alpha - p.beta2;
  if (std::abs(p.delta1 - p.delta2) > kAlgebraTol)
    fail(ErrorKind::InvalidArgument, "qma params: q* failed to equalize the two bounds");
  const double closed_form = p.eps * (a - b - p.delta) / denom;
  if (std::abs(p.delta2 - closed_form) > kAlgebraTol)
    fail(ErrorKind::InvalidArgument, "qma params: gap closed form mismatch");
  const double floor = (a - b) * (a - b) * (a - b) / 128.0;
  if (p.delta2 + kAlgebraTol < floor)
    fail(ErrorKind::InvalidArgument, "qma params: gap below its closed-form floor");
  return p;
}

QmaVerifyReport qma_verify(const HstabInstance& inst, const QuantumState& prover,
                           const QmaParams& params, std::uint64_t rounds, Rng& rng) {
  if (prover.num_qubits() != inst.group.num_qubits())
    fail(ErrorKind::DimensionMismatch, "qma verify: prover state size mismatch");
  QmaVerifyReport rep;
  rep.rounds = rounds;
  const double m_val = expectation(prover, inst.m);
  const double p_pass = exact_pass_probability(prover, inst.group);
  rep.exact_expectation = params.q_star * m_val + (1.0 - params.q_star) * p_pass;
  for (std::uint64_t i = 0; i < rounds; ++i) {
    bool accept;
    if (rng.bernoulli(params.q_star)) {
      // Two-outcome POVM {M, I - M}; accept when M is realized.
      accept = rng.bernoulli(std::clamp(m_val, 0.0, 1.0));
    } else {
      accept = run_test_round(prover, inst.group, rng);
    }
    if (accept) ++rep.accepts;
  }
  if (rounds > 0) {
    rep.rate = static_cast<double>(rep.accepts) / static_cast<double>(rounds);
    rep.std_error = std::sqrt(std::max(rep.rate * (1.0 - rep.rate), 1e-12) /
                              static_cast<double>(rounds));
  }
  return rep;
}

QmaSoundnessReport qma_soundness_check(const HstabInstance& inst, const QmaParams& params) {
  QmaSoundnessReport rep;
  rep.h_value = h_stab(inst);
  if (rep.h_value > inst.b + kValidityTol)
    fail(ErrorKind::Inapplicable,
         "soundness check: h = " + std::to_string(rep.h_value) + " exceeds b = " +
             std::to_string(inst.b) + "; not a no-instance");
  LambdaProjector lambda = lambda_projector(inst.group);
  const std::size_t dim = lambda.matrix.rows();
  CMatrix e_test = (CMatrix::identity(dim) + lambda.matrix) * cplx(0.5, 0.0);
  CMatrix e = inst.m.matrix() * cplx(params.q_star, 0.0) +
              e_test * cplx(1.0 - params.q_star, 0.0);
  rep.optimal_value = lambda_max(e);
  rep.beta1 = params.beta1;
  rep.beta2 = params.beta2;
  rep.bound = std::max(params.beta1, params.beta2);
  rep.holds = rep.optimal_value <= rep.bound + kValidityTol;
  return rep;
}

HstabInstance random_no_instance(std::size_t n, double a, double b, Rng& rng) {
  // Random graph group, random generator subset, random signs.
  for (int attempt = 0; attempt < 64; ++attempt) {
    Graph g = Graph::random(n, 0.5, rng);
    StabilizerGroup full = graph_stabilizers(g);
    std::vector<PauliString> gens;
    for (const PauliString& p : full.generators()) {
      if (rng.bernoulli(0.75)) gens.push_back(rng.bernoulli(0.5) ? p.negated() : p);
    }
    if (gens.empty()) continue;
    StabilizerGroup group = StabilizerGroup::validate(std::move(gens));
    ObservableElement m = random_observable(n, rng);
    HstabInstance candidate{group, m, a, b};
    const double h = h_stab(candidate);
    if (h <= 0.9 * b) return candidate;
    // Rescale M downward so the instance lands strictly under b.
    const double scale = 0.9 * b / std::max(h, 1e-12);
    if (scale >= 1.0) return candidate;
    CMatrix scaled = m.matrix() * cplx(scale, 0.0);
    return HstabInstance{std::move(group), ObservableElement::validate(std::move(scaled)), a, b};
  }
  fail(ErrorKind::InvalidArgument, "random_no_instance: failed to build a group");
}

ReductionReport reduction_witness_demo(const ConnectedSystem& sys,
                                       const VerifierCircuit& circuit, std::uint64_t y) {
  ReductionReport rep;
  StabilizerGroup ext = extended_test_stabilizers(sys);
  CMatrix e_acc = computation_branch_operator(sys, circuit, y);
  HstabInstance inst{ext, ObservableElement::validate(e_acc), 1.0, 0.0};
  rep.h_value = h_stab(inst);
  rep.best_witness_value = circuit.best_witness_acceptance(y);

  std::vector<CVector> basis = codespace_basis(ext);
  rep.codespace_rank = basis.size();
  rep.witness_dim = std::size_t(1) << sys.witness_size;

  // Round trip: contract each codespace basis vector against the graph state
  // after undoing the connect layer, then rebuild and compare.
  const std::size_t N = sys.graph_part.num_vertices();
  const std::size_t total = sys.total_qubits();
  const CVector graph_amp = graph_state(sys.graph_part).amplitudes();
  const std::size_t wd = std::size_t(1) << sys.witness_size;
  double worst = 0.0;
  for (const CVector& c : basis) {
    QuantumState state = QuantumState::pure(total, c);
    for (auto [v, w] : sys.connect_edges) state = apply_cz(state, v, N + w);
    // <G| contraction over the graph register.
    const CVector& amp = state.amplitudes();
    CVector xi(wd, cplx(0.0, 0.0));
    for (std::size_t gidx = 0; gidx < graph_amp.size(); ++gidx)
      for (std::size_t widx = 0; widx < wd; ++widx)
        xi[widx] += std::conj(graph_amp[gidx]) * amp[gidx * wd + widx];
    double xi_norm = norm(xi);
    if (std::abs(xi_norm - 1.0) > 1e-6) {
      worst = std::max(worst, std::abs(xi_norm - 1.0));
      continue;
    }
    for (auto& x : xi) x /= xi_norm;
    QuantumState rebuilt = connect_witness(QuantumState::pure(sys.witness_size, xi), sys);
    double fid = std::norm(inner(rebuilt.amplitudes(), c));
    worst = std::max(worst, 1.0 - fid);
  }
  rep.max_roundtrip_deficit = worst;
  rep.holds = std::abs(rep.h_value - rep.best_witness_value) <= kValidityTol &&
              rep.codespace_rank == rep.witness_dim && worst <= kValidityTol;
  return rep;
}

}  // namespace qamsim

// SPDX-License-Identifier: Apache-2.0
#include "qamsim/mbqc.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "qamsim/errors.hpp"

namespace qamsim {

void MeasurementPattern::check(std::size_t num_qubits) const {
  std::set<std::size_t> measured;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const MeasureStep& st = steps[i];
    if (st.qubit >= num_qubits)
      fail(ErrorKind::InvalidArgument, "pattern: step qubit out of range");
    if (!measured.insert(st.qubit).second)
      fail(ErrorKind::InvalidArgument,
           "pattern: qubit " + std::to_string(st.qubit) + " measured twice");
    for (std::size_t d : st.deps)
      if (d >= i)
        fail(ErrorKind::InvalidArgument, "pattern: dependency on a later or same step");
  }
  for (std::size_t q : output_qubits) {
    if (q >= num_qubits)
      fail(ErrorKind::InvalidArgument, "pattern: output qubit out of range");
    if (measured.count(q))
      fail(ErrorKind::InvalidArgument, "pattern: output qubit was measured");
  }
  for (const ByproductRule& rule : byproducts) {
    if (std::find(output_qubits.begin(), output_qubits.end(), rule.qubit) ==
        output_qubits.end())
      fail(ErrorKind::InvalidArgument, "pattern: byproduct target is not an output");
    for (std::size_t d : rule.x_deps)
      if (d >= steps.size())
        fail(ErrorKind::InvalidArgument, "pattern: byproduct x-dependency out of range");
    for (std::size_t d : rule.z_deps)
      if (d >= steps.size())
        fail(ErrorKind::InvalidArgument, "pattern: byproduct z-dependency out of range");
  }
}

SingleQubitOutcome measure_single_qubit(const QuantumState& s, std::size_t qubit,
                                        const BasisSpec& basis, Rng& rng) {
  if (qubit >= s.num_qubits())
    fail(ErrorKind::InvalidArgument, "measure_single_qubit: qubit out of range");
  // Observable A with A^2 = I; projectors (I +/- A)/2.
  CMatrix a(2, 2);
  if (basis.plane == BasisSpec::Plane::Z) {
    a(0, 0) = 1.0;
    a(1, 1) = -1.0;
  } else {
    a(0, 1) = std::exp(cplx(0.0, -basis.angle));
    a(1, 0) = std::exp(cplx(0.0, basis.angle));
  }
  CMatrix proj_plus(2, 2), proj_minus(2, 2);
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) {
      cplx id = (r == c) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
      proj_plus(r, c) = 0.5 * (id + a(r, c));
      proj_minus(r, c) = 0.5 * (id - a(r, c));
    }

  // Expand the 2x2 projector over the full register at this qubit.
  const std::size_t n = s.num_qubits();
  const std::uint64_t qbit = 1ull << (n - 1 - qubit);
  auto project = [&](const CMatrix& k2) {
    if (s.is_pure()) {
      const CVector& v = s.amplitudes();
      CVector out(v.size(), cplx(0.0, 0.0));
      for (std::uint64_t b = 0; b < v.size(); ++b) {
        std::uint64_t vb = (b & qbit) ? 1 : 0;
        out[b & ~qbit] += k2(0, vb) * v[b];
        out[b | qbit] += k2(1, vb) * v[b];
      }
      return out;
    }
    return CVector{};
  };

  double p_plus;
  if (s.is_pure()) {
    CVector plus_branch = project(proj_plus);
    double np = norm(plus_branch);
    p_plus = np * np;
    bool plus = rng.bernoulli(std::clamp(p_plus, 0.0, 1.0));
    CVector branch = plus ? std::move(plus_branch) : project(proj_minus);
    double prob = plus ? p_plus : 1.0 - p_plus;
    if (prob <= 0.0)
      fail(ErrorKind::InvalidArgument, "measure_single_qubit: zero-probability branch");
    double nn = norm(branch);
    for (auto& x : branch) x /= nn;
    return SingleQubitOutcome{plus ? 0 : 1,
                              QuantumState::pure(s.num_qubits(), std::move(branch)), prob};
  }

  // Mixed input: conjugate by the expanded projector.
  const CMatrix rho = s.density();
  auto conjugate = [&](const CMatrix& k2) {
    const std::size_t dim = rho.rows();
    CMatrix kr(dim, dim);
    for (std::uint64_t r = 0; r < dim; ++r) {
      std::uint64_t vr = (r & qbit) ? 1 : 0;
      for (std::uint64_t c = 0; c < dim; ++c) {
        kr(r, c) = k2(vr, 0) * rho(r & ~qbit, c) + k2(vr, 1) * rho(r | qbit, c);
      }
    }
    CMatrix out(dim, dim);
    for (std::uint64_t r = 0; r < dim; ++r)
      for (std::uint64_t c = 0; c < dim; ++c) {
        std::uint64_t vc = (c & qbit) ? 1 : 0;
        out(r, c) = kr(r, c & ~qbit) * std::conj(k2(vc, 0)) +
                    kr(r, c | qbit) * std::conj(k2(vc, 1));
      }
    return out;
  };
  CMatrix plus_rho = conjugate(proj_plus);
  p_plus = plus_rho.trace().real();
  bool plus = rng.bernoulli(std::clamp(p_plus, 0.0, 1.0));
  CMatrix branch = plus ? std::move(plus_rho) : conjugate(proj_minus);
  double prob = plus ? p_plus : 1.0 - p_plus;
  if (prob <= 0.0)
    fail(ErrorKind::InvalidArgument, "measure_single_qubit: zero-probability branch");
  branch *= cplx(1.0 / prob, 0.0);
  return SingleQubitOutcome{plus ? 0 : 1,
                            QuantumState::mixed_unchecked(s.num_qubits(), std::move(branch)),
                            prob};
}

PatternResult execute_pattern(const QuantumState& state, const MeasurementPattern& pat,
                              Rng& rng) {
  pat.check(state.num_qubits());
  QuantumState current = state;
  std::vector<int> outcomes;
  outcomes.reserve(pat.steps.size());
  for (const MeasureStep& st : pat.steps) {
    BasisSpec basis = st.basis;
    if (basis.plane == BasisSpec::Plane::XY) {
      int parity = 0;
      for (std::size_t d : st.deps) parity ^= outcomes[d];
      if (parity) basis.angle = -basis.angle;
    }
    SingleQubitOutcome out = measure_single_qubit(current, st.qubit, basis, rng);
    outcomes.push_back(out.bit);
    current = std::move(out.post);
  }
  // Pauli frame, then restriction to the outputs.
  for (const ByproductRule& rule : pat.byproducts) {
    int xp = 0, zp = 0;
    for (std::size_t d : rule.x_deps) xp ^= outcomes[d];
    for (std::size_t d : rule.z_deps) zp ^= outcomes[d];
    if (xp)
      current = apply_pauli(current,
                            PauliString::single(current.num_qubits(), rule.qubit, 'X'));
    if (zp)
      current = apply_pauli(current,
                            PauliString::single(current.num_qubits(), rule.qubit, 'Z'));
  }
  QuantumState post = partial_trace(current, pat.output_qubits);
  return PatternResult{std::move(outcomes), std::move(post)};
}

double pattern_vs_circuit(const MeasurementPattern& pat,
                          const std::function<QuantumState(const QuantumState&)>& resource_builder,
                          const CMatrix& u, std::size_t trials, Rng& rng) {
  std::size_t in_qubits = 0;
  while ((std::size_t(1) << in_qubits) < u.rows()) ++in_qubits;
  if ((std::size_t(1) << in_qubits) != u.rows() || u.rows() != u.cols())
    fail(ErrorKind::DimensionMismatch, "pattern_vs_circuit: bad unitary shape");
  double worst = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    QuantumState input = random_pure_state(in_qubits, rng);
    QuantumState resource = resource_builder(input);
    PatternResult res = execute_pattern(resource, pat, rng);
    CVector target = u * input.amplitudes();
    double deficit = 1.0 - fidelity_with_pure(res.post, target);
    worst = std::max(worst, deficit);
  }
  return worst;
}

MeasurementPattern teleportation_pattern() {
  MeasurementPattern pat;
  pat.steps = {MeasureStep{0, BasisSpec{BasisSpec::Plane::XY, 0.0}, {}}};
  pat.output_qubits = {1};
  pat.byproducts = {ByproductRule{1, {0}, {}}};
  return pat;
}

QuantumState teleportation_resource(const QuantumState& input) {
  // CZ(|psi> tensor |+>) with the input on qubit 0.
  QuantumState joint =
      QuantumState::pure(2, kron(input.amplitudes(), plus_state(1).amplitudes()));
  return apply_cz(joint, 0, 1);
}

MeasurementPattern wire_identity_pattern() {
  MeasurementPattern pat;
  pat.steps = {MeasureStep{0, BasisSpec{BasisSpec::Plane::XY, 0.0}, {}},
               MeasureStep{1, BasisSpec{BasisSpec::Plane::XY, 0.0}, {}}};
  pat.output_qubits = {2};
  pat.byproducts = {ByproductRule{2, {1}, {0}}};
  return pat;
}

QuantumState wire_identity_resource(const QuantumState& input) {
  CVector plus = plus_state(1).amplitudes();
  QuantumState joint =
      QuantumState::pure(3, kron(kron(input.amplitudes(), plus), plus));
  joint = apply_cz(joint, 0, 1);
  return apply_cz(joint, 1, 2);
}

}  // namespace qamsim

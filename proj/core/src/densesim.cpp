// SPDX-License-Identifier: Apache-2.0
#include "qamsim/densesim.hpp"

#include <algorithm>
#include <cmath>

#include "qamsim/errors.hpp"

namespace qamsim {

DenseCaps& dense_caps() {
  static DenseCaps caps;
  return caps;
}

namespace {

void check_cap(std::size_t n, bool mixed) {
  const int cap = mixed ? dense_caps().mixed_qubits : dense_caps().pure_qubits;
  if (n > static_cast<std::size_t>(cap))
    fail(ErrorKind::CapExceeded, "dense cap exceeded: " + std::to_string(n) +
                                     " qubits > cap " + std::to_string(cap));
}

}  // namespace

QuantumState QuantumState::pure(std::size_t n, CVector amplitudes) {
  check_cap(n, false);
  if (amplitudes.size() != (std::size_t(1) << n))
    fail(ErrorKind::DimensionMismatch, "pure state: amplitude count != 2^n");
  double nn = norm(amplitudes);
  if (std::abs(nn - 1.0) > kValidityTol)
    fail(ErrorKind::InvalidArgument, "pure state: norm " + std::to_string(nn) + " != 1");
  QuantumState s;
  s.n_ = n;
  s.pure_ = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::mixed(std::size_t n, CMatrix density) {
  check_cap(n, true);
  const std::size_t dim = std::size_t(1) << n;
  if (density.rows() != dim || density.cols() != dim)
    fail(ErrorKind::DimensionMismatch, "mixed state: matrix != 2^n x 2^n");
  if (density.hermiticity_defect() > kValidityTol)
    fail(ErrorKind::InvalidArgument, "mixed state: not Hermitian");
  if (std::abs(density.trace().real() - 1.0) > kValidityTol ||
      std::abs(density.trace().imag()) > kValidityTol)
    fail(ErrorKind::InvalidArgument, "mixed state: trace != 1");
  EigenSystem sys = hermitian_eigensystem(density);
  if (sys.values.front() < -kValidityTol)
    fail(ErrorKind::InvalidArgument, "mixed state: negative eigenvalue " +
                                         std::to_string(sys.values.front()));
  QuantumState s;
  s.n_ = n;
  s.rho_ = std::move(density);
  return s;
}

QuantumState QuantumState::mixed_unchecked(std::size_t n, CMatrix density) {
  check_cap(n, true);
  QuantumState s;
  s.n_ = n;
  s.rho_ = std::move(density);
  return s;
}

const CVector& QuantumState::amplitudes() const {
  if (!pure_) fail(ErrorKind::InvalidArgument, "amplitudes(): state is mixed");
  return *pure_;
}

CMatrix QuantumState::density() const {
  if (rho_) return *rho_;
  return CMatrix::outer(*pure_, *pure_);
}

bool QuantumState::approx_equal(const QuantumState& o, double tol) const {
  if (n_ != o.n_) return false;
  CMatrix d = density() - o.density();
  return d.max_abs() <= tol;
}

ObservableElement ObservableElement::validate(CMatrix m) {
  if (m.rows() != m.cols()) fail(ErrorKind::DimensionMismatch, "observable: not square");
  std::size_t n = 0;
  while ((std::size_t(1) << n) < m.rows()) ++n;
  if ((std::size_t(1) << n) != m.rows())
    fail(ErrorKind::DimensionMismatch, "observable: dimension not a power of 2");
  if (m.hermiticity_defect() > kValidityTol)
    fail(ErrorKind::InvalidArgument, "observable: not Hermitian");
  EigenSystem sys = hermitian_eigensystem(m);
  if (sys.values.front() < -kValidityTol || sys.values.back() > 1.0 + kValidityTol)
    fail(ErrorKind::InvalidArgument,
         "observable: spectrum [" + std::to_string(sys.values.front()) + ", " +
             std::to_string(sys.values.back()) + "] outside [0,1]");
  return ObservableElement(n, std::move(m));
}

ObservableElement ObservableElement::identity(std::size_t n) {
  return ObservableElement(n, CMatrix::identity(std::size_t(1) << n));
}

QuantumState plus_state(std::size_t n) {
  if (n < 1) fail(ErrorKind::InvalidArgument, "plus_state: n must be >= 1");
  check_cap(n, false);
  const std::size_t dim = std::size_t(1) << n;
  CVector v(dim, cplx(1.0 / std::sqrt(static_cast<double>(dim)), 0.0));
  return QuantumState::pure(n, std::move(v));
}

QuantumState basis_state(std::size_t n, std::uint64_t index) {
  check_cap(n, false);
  const std::size_t dim = std::size_t(1) << n;
  if (index >= dim) fail(ErrorKind::InvalidArgument, "basis_state: index out of range");
  CVector v(dim, cplx(0.0, 0.0));
  v[index] = 1.0;
  return QuantumState::pure(n, std::move(v));
}

QuantumState maximally_mixed_state(std::size_t n) {
  check_cap(n, true);
  const std::size_t dim = std::size_t(1) << n;
  CMatrix rho(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) rho(i, i) = 1.0 / static_cast<double>(dim);
  return QuantumState::mixed_unchecked(n, std::move(rho));
}

QuantumState apply_cz(const QuantumState& s, std::size_t i, std::size_t j) {
  const std::size_t n = s.num_qubits();
  if (i == j) fail(ErrorKind::InvalidArgument, "apply_cz: i == j");
  if (i >= n || j >= n) fail(ErrorKind::InvalidArgument, "apply_cz: index out of range");
  const std::uint64_t mask = (1ull << (n - 1 - i)) | (1ull << (n - 1 - j));
  if (s.is_pure()) {
    CVector v = s.amplitudes();
    for (std::uint64_t b = 0; b < v.size(); ++b)
      if ((b & mask) == mask) v[b] = -v[b];
    return QuantumState::pure(n, std::move(v));
  }
  CMatrix rho = s.density();
  const std::size_t dim = rho.rows();
  for (std::uint64_t r = 0; r < dim; ++r) {
    bool sr = (r & mask) == mask;
    for (std::uint64_t c = 0; c < dim; ++c) {
      bool sc = (c & mask) == mask;
      if (sr != sc) rho(r, c) = -rho(r, c);
    }
  }
  return QuantumState::mixed_unchecked(n, std::move(rho));
}

namespace {

void check_unitary(const CMatrix& u) {
  CMatrix probe = u.adjoint() * u;
  CMatrix defect = probe - CMatrix::identity(u.rows());
  if (defect.max_abs() > kValidityTol)
    fail(ErrorKind::InvalidArgument, "apply_unitary: matrix not unitary");
}

// Apply u on `targets` to an amplitude vector, gather/scatter style.
CVector apply_unitary_vec(const CVector& v, std::size_t n, const CMatrix& u,
                          const std::vector<std::size_t>& targets) {
  const std::size_t k = targets.size();
  const std::size_t block = std::size_t(1) << k;
  std::vector<std::uint64_t> tbit(k);
  for (std::size_t t = 0; t < k; ++t) tbit[t] = 1ull << (n - 1 - targets[t]);
  std::uint64_t tmask = 0;
  for (auto b : tbit) tmask |= b;

  CVector out(v.size());
  std::vector<cplx> in_block(block), out_block(block);
  for (std::uint64_t base = 0; base < v.size(); ++base) {
    if (base & tmask) continue;  // enumerate non-target assignments only
    for (std::uint64_t g = 0; g < block; ++g) {
      std::uint64_t idx = base;
      for (std::size_t t = 0; t < k; ++t)
        if ((g >> (k - 1 - t)) & 1) idx |= tbit[t];
      in_block[g] = v[idx];
    }
    for (std::uint64_t r = 0; r < block; ++r) {
      cplx acc(0.0, 0.0);
      for (std::uint64_t c = 0; c < block; ++c) acc += u(r, c) * in_block[c];
      out_block[r] = acc;
    }
    for (std::uint64_t g = 0; g < block; ++g) {
      std::uint64_t idx = base;
      for (std::size_t t = 0; t < k; ++t)
        if ((g >> (k - 1 - t)) & 1) idx |= tbit[t];
      out[idx] = out_block[g];
    }
  }
  return out;
}

}  // namespace

QuantumState apply_unitary(const QuantumState& s, const CMatrix& u,
                           const std::vector<std::size_t>& targets) {
  const std::size_t n = s.num_qubits();
  if (targets.empty()) fail(ErrorKind::InvalidArgument, "apply_unitary: no targets");
  std::vector<std::size_t> seen = targets;
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    fail(ErrorKind::InvalidArgument, "apply_unitary: duplicate target");
  if (seen.back() >= n) fail(ErrorKind::InvalidArgument, "apply_unitary: target out of range");
  if (u.rows() != (std::size_t(1) << targets.size()) || u.rows() != u.cols())
    fail(ErrorKind::DimensionMismatch, "apply_unitary: matrix size != 2^#targets");
  check_unitary(u);

  if (s.is_pure())
    return QuantumState::pure(n, apply_unitary_vec(s.amplitudes(), n, u, targets));

  // rho -> (U rho) U^dagger, column pass then a conjugated row pass.
  const CMatrix rho = s.density();
  const std::size_t dim = rho.rows();
  CMatrix left(dim, dim);
  CVector col(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t r = 0; r < dim; ++r) col[r] = rho(r, c);
    CVector nc = apply_unitary_vec(col, n, u, targets);
    for (std::size_t r = 0; r < dim; ++r) left(r, c) = nc[r];
  }
  CMatrix uconj(u.rows(), u.cols());
  for (std::size_t r = 0; r < u.rows(); ++r)
    for (std::size_t c = 0; c < u.cols(); ++c) uconj(r, c) = std::conj(u(r, c));
  CMatrix out(dim, dim);
  CVector row(dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) row[c] = left(r, c);
    CVector nr = apply_unitary_vec(row, n, uconj, targets);
    for (std::size_t c = 0; c < dim; ++c) out(r, c) = nr[c];
  }
  return QuantumState::mixed_unchecked(n, std::move(out));
}

QuantumState apply_pauli(const QuantumState& s, const PauliString& p) {
  if (p.num_qubits() != s.num_qubits())
    fail(ErrorKind::DimensionMismatch, "apply_pauli: qubit count mismatch");
  if (s.is_pure()) return QuantumState::pure(s.num_qubits(), p.apply(s.amplitudes()));
  CMatrix rho = p.apply_left(s.density());
  rho = p.adjoint().apply_right(rho);  // P rho P^dagger
  return QuantumState::mixed_unchecked(s.num_qubits(), std::move(rho));
}

double pauli_plus_probability(const QuantumState& s, const PauliString& p) {
  if (p.num_qubits() != s.num_qubits())
    fail(ErrorKind::DimensionMismatch, "measure: qubit count mismatch");
  if (!p.has_real_sign())
    fail(ErrorKind::ImaginaryPhase, "measure: operator with phase +/-i is not an observable");
  double exp_val;
  if (s.is_pure()) {
    exp_val = inner(s.amplitudes(), p.apply(s.amplitudes())).real();
  } else {
    exp_val = p.apply_left(s.density()).trace().real();
  }
  return std::clamp(0.5 * (1.0 + exp_val), 0.0, 1.0);
}

MeasureResult measure_pauli(const QuantumState& s, const PauliString& p, Rng& rng) {
  const double p_plus = pauli_plus_probability(s, p);
  const bool plus = rng.bernoulli(p_plus);
  const double prob = plus ? p_plus : 1.0 - p_plus;
  if (prob <= 0.0)
    fail(ErrorKind::InvalidArgument, "measure: sampled a zero-probability branch");
  const double sgn = plus ? 1.0 : -1.0;

  if (s.is_pure()) {
    CVector pv = p.apply(s.amplitudes());
    CVector post(pv.size());
    for (std::size_t i = 0; i < pv.size(); ++i)
      post[i] = 0.5 * (s.amplitudes()[i] + sgn * pv[i]);
    double nn = norm(post);
    for (auto& x : post) x /= nn;
    return MeasureResult{plus ? +1 : -1, QuantumState::pure(s.num_qubits(), std::move(post)),
                         prob};
  }
  // Pi rho Pi / prob with Pi = (I + sgn P)/2 = (rho + sgn(P rho) + sgn(rho P) + P rho P)/4.
  CMatrix rho = s.density();
  CMatrix prho = p.apply_left(rho);
  CMatrix rhop = p.apply_right(rho);
  CMatrix prhop = p.apply_right(prho);
  CMatrix post = (rho + prho * cplx(sgn, 0.0) + rhop * cplx(sgn, 0.0) + prhop) *
                 cplx(0.25 / prob, 0.0);
  return MeasureResult{plus ? +1 : -1,
                       QuantumState::mixed_unchecked(s.num_qubits(), std::move(post)), prob};
}

double expectation(const QuantumState& s, const ObservableElement& m) {
  return expectation(s, m.matrix());
}

double expectation(const QuantumState& s, const CMatrix& m) {
  if (m.rows() != s.dim() || m.cols() != s.dim())
    fail(ErrorKind::DimensionMismatch, "expectation: dimension mismatch");
  if (s.is_pure()) {
    cplx val = inner(s.amplitudes(), m * s.amplitudes());
    return val.real();
  }
  cplx acc(0.0, 0.0);
  const CMatrix rho = s.density();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) acc += m(i, k) * rho(k, i);
  return acc.real();
}

double trace_norm_distance(const QuantumState& rho, const QuantumState& tau) {
  return trace_norm_distance(rho, tau.density());
}

double trace_norm_distance(const QuantumState& rho, const CMatrix& tau) {
  if (tau.rows() != rho.dim() || tau.cols() != rho.dim())
    fail(ErrorKind::DimensionMismatch, "trace_norm_distance: dimension mismatch");
  CMatrix diff = rho.density() - tau;
  return trace_norm_hermitian(diff);
}

QuantumState partial_trace(const QuantumState& s, const std::vector<std::size_t>& keep) {
  const std::size_t n = s.num_qubits();
  std::vector<std::size_t> k = keep;
  std::sort(k.begin(), k.end());
  if (std::adjacent_find(k.begin(), k.end()) != k.end())
    fail(ErrorKind::InvalidArgument, "partial_trace: duplicate keep index");
  if (!k.empty() && k.back() >= n)
    fail(ErrorKind::InvalidArgument, "partial_trace: keep index out of range");
  if (k.size() == n) return s;  // nothing traced out
  if (k.empty()) fail(ErrorKind::InvalidArgument, "partial_trace: cannot keep zero qubits");

  std::vector<std::size_t> traced;
  for (std::size_t q = 0; q < n; ++q)
    if (!std::binary_search(k.begin(), k.end(), q)) traced.push_back(q);

  const std::size_t kd = std::size_t(1) << k.size();
  const std::size_t td = std::size_t(1) << traced.size();
  auto assemble = [&](std::uint64_t kept_bits, std::uint64_t traced_bits) {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < k.size(); ++i)
      if ((kept_bits >> (k.size() - 1 - i)) & 1) idx |= 1ull << (n - 1 - k[i]);
    for (std::size_t i = 0; i < traced.size(); ++i)
      if ((traced_bits >> (traced.size() - 1 - i)) & 1) idx |= 1ull << (n - 1 - traced[i]);
    return idx;
  };

  const CMatrix rho = s.density();
  CMatrix out(kd, kd);
  for (std::uint64_t r = 0; r < kd; ++r)
    for (std::uint64_t c = 0; c < kd; ++c) {
      cplx acc(0.0, 0.0);
      for (std::uint64_t t = 0; t < td; ++t) acc += rho(assemble(r, t), assemble(c, t));
      out(r, c) = acc;
    }
  return QuantumState::mixed_unchecked(k.size(), std::move(out));
}

double fidelity_with_pure(const QuantumState& s, const CVector& target) {
  if (target.size() != s.dim())
    fail(ErrorKind::DimensionMismatch, "fidelity: dimension mismatch");
  if (s.is_pure()) return std::norm(inner(target, s.amplitudes()));
  cplx acc(0.0, 0.0);
  const CMatrix rho = s.density();
  for (std::size_t i = 0; i < target.size(); ++i)
    for (std::size_t j = 0; j < target.size(); ++j)
      acc += std::conj(target[i]) * rho(i, j) * target[j];
  return acc.real();
}

QuantumState random_pure_state(std::size_t n, Rng& rng) {
  CVector v = random_gaussian_vector(std::size_t(1) << n, rng);
  normalize(v);
  return QuantumState::pure(n, std::move(v));
}

QuantumState random_mixed_state(std::size_t n, Rng& rng) {
  const std::size_t dim = std::size_t(1) << n;
  CMatrix a = random_gaussian_matrix(dim, dim, rng);
  CMatrix rho = a * a.adjoint();
  double tr = rho.trace().real();
  rho *= cplx(1.0 / tr, 0.0);
  return QuantumState::mixed_unchecked(n, std::move(rho));
}

ObservableElement random_observable(std::size_t n, Rng& rng) {
  const std::size_t dim = std::size_t(1) << n;
  CMatrix a = random_gaussian_matrix(dim, dim, rng);
  CMatrix h = a + a.adjoint();
  EigenSystem sys = hermitian_eigensystem(h);
  CMatrix m(dim, dim);
  // Reuse the Haar-ish eigenbasis of a GUE sample, spectrum uniform in [0,1].
  std::vector<double> evals(dim);
  for (auto& e : evals) e = rng.uniform();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t t = 0; t < dim; ++t)
        acc += sys.vectors(i, t) * evals[t] * std::conj(sys.vectors(j, t));
      m(i, j) = acc;
    }
  return ObservableElement::validate(std::move(m));
}

CMatrix gate_matrix(const std::string& name, std::optional<double> angle) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  auto require_angle = [&]() {
    if (!angle) fail(ErrorKind::InvalidArgument, "gate " + name + " requires an angle");
    return *angle;
  };
  if (name == "I") return CMatrix::identity(2);
  if (name == "X") {
    CMatrix m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
  }
  if (name == "Y") {
    CMatrix m(2, 2);
    m(0, 1) = cplx(0.0, -1.0);
    m(1, 0) = cplx(0.0, 1.0);
    return m;
  }
  if (name == "Z") {
    CMatrix m = CMatrix::identity(2);
    m(1, 1) = -1.0;
    return m;
  }
  if (name == "H") {
    CMatrix m(2, 2);
    m(0, 0) = inv_sqrt2;
    m(0, 1) = inv_sqrt2;
    m(1, 0) = inv_sqrt2;
    m(1, 1) = -inv_sqrt2;
    return m;
  }
  if (name == "S") {
    CMatrix m = CMatrix::identity(2);
    m(1, 1) = cplx(0.0, 1.0);
    return m;
  }
  if (name == "T") {
    CMatrix m = CMatrix::identity(2);
    m(1, 1) = std::exp(cplx(0.0, M_PI / 4.0));
    return m;
  }
  if (name == "RX" || name == "RY" || name == "RZ" || name == "P") {
    double th = require_angle();
    CMatrix m(2, 2);
    if (name == "RX") {
      m(0, 0) = std::cos(th / 2);
      m(0, 1) = cplx(0.0, -std::sin(th / 2));
      m(1, 0) = cplx(0.0, -std::sin(th / 2));
      m(1, 1) = std::cos(th / 2);
    } else if (name == "RY") {
      m(0, 0) = std::cos(th / 2);
      m(0, 1) = -std::sin(th / 2);
      m(1, 0) = std::sin(th / 2);
      m(1, 1) = std::cos(th / 2);
    } else if (name == "RZ") {
      m(0, 0) = std::exp(cplx(0.0, -th / 2));
      m(1, 1) = std::exp(cplx(0.0, th / 2));
    } else {  // P
      m(0, 0) = 1.0;
      m(1, 1) = std::exp(cplx(0.0, th));
    }
    return m;
  }
  if (name == "CZ") {
    CMatrix m = CMatrix::identity(4);
    m(3, 3) = -1.0;
    return m;
  }
  if (name == "CNOT") {
    CMatrix m(4, 4);
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
  }
  if (name == "SWAP") {
    CMatrix m(4, 4);
    m(0, 0) = 1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 3) = 1.0;
    return m;
  }
  if (name == "CRY") {
    double th = require_angle();
    CMatrix m = CMatrix::identity(4);
    m(2, 2) = std::cos(th / 2);
    m(2, 3) = -std::sin(th / 2);
    m(3, 2) = std::sin(th / 2);
    m(3, 3) = std::cos(th / 2);
    return m;
  }
  fail(ErrorKind::InvalidArgument, "unknown gate name: " + name);
}

}  // namespace qamsim

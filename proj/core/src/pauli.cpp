// SPDX-License-Identifier: Apache-2.0
#include "qamsim/pauli.hpp"

#include <bit>
#include <sstream>

#include "qamsim/errors.hpp"

namespace qamsim {

PauliString PauliString::identity(std::size_t n) {
  PauliString p;
  p.n_ = n;
  p.x_.assign(n, 0);
  p.z_.assign(n, 0);
  p.phase_exp_ = 0;
  return p;
}

PauliString PauliString::single(std::size_t n, std::size_t qubit, char letter) {
  if (qubit >= n) fail(ErrorKind::InvalidArgument, "pauli single: qubit out of range");
  PauliString p = identity(n);
  switch (letter) {
    case 'I':
      break;
    case 'X':
      p.x_[qubit] = 1;
      break;
    case 'Z':
      p.z_[qubit] = 1;
      break;
    case 'Y':
      p.x_[qubit] = 1;
      p.z_[qubit] = 1;
      p.phase_exp_ = 1;  // Y = i XZ
      break;
    default:
      fail(ErrorKind::Parse, std::string("unknown Pauli letter '") + letter + "'");
  }
  return p;
}

PauliString PauliString::from_string(const std::string& text) {
  std::size_t pos = 0;
  int phase = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  std::string letters = text.substr(pos);
  if (letters.empty()) fail(ErrorKind::Parse, "pauli string has no letters: " + text);
  PauliString p = identity(letters.size());
  for (std::size_t j = 0; j < letters.size(); ++j) {
    char c = letters[j];
    switch (c) {
      case 'I':
      case '_':
        break;
      case 'X':
        p.x_[j] = 1;
        break;
      case 'Z':
        p.z_[j] = 1;
        break;
      case 'Y':
        p.x_[j] = 1;
        p.z_[j] = 1;
        phase += 1;
        break;
      default:
        fail(ErrorKind::Parse, std::string("unknown Pauli letter '") + c + "' in " + text);
    }
  }
  p.phase_exp_ = ((phase % 4) + 4) % 4;
  return p;
}

bool PauliString::has_real_sign() const {
  // Display phase is i^(phase_exp - #Y); real iff that exponent is even.
  int y_count = 0;
  for (std::size_t j = 0; j < n_; ++j)
    if (x_[j] && z_[j]) ++y_count;
  return ((phase_exp_ - y_count) % 2) == 0;
}

int PauliString::sign() const {
  int y_count = 0;
  for (std::size_t j = 0; j < n_; ++j)
    if (x_[j] && z_[j]) ++y_count;
  int e = ((phase_exp_ - y_count) % 4 + 4) % 4;
  return e == 0 ? +1 : -1;
}

PauliString PauliString::negated() const {
  PauliString p = *this;
  p.phase_exp_ = (p.phase_exp_ + 2) % 4;
  return p;
}

PauliString PauliString::adjoint() const {
  // (i^e prod X^x Z^z)^dagger = i^{-e} prod (-1)^{x z} X^x Z^z.
  PauliString p = *this;
  int e = -phase_exp_;
  for (std::size_t j = 0; j < n_; ++j)
    if (x_[j] && z_[j]) e += 2;
  p.phase_exp_ = ((e % 4) + 4) % 4;
  return p;
}

bool PauliString::operator==(const PauliString& o) const {
  return n_ == o.n_ && x_ == o.x_ && z_ == o.z_ && phase_exp_ == o.phase_exp_;
}

std::string PauliString::str() const {
  int y_count = 0;
  for (std::size_t j = 0; j < n_; ++j)
    if (x_[j] && z_[j]) ++y_count;
  int e = ((phase_exp_ - y_count) % 4 + 4) % 4;
  static const char* prefix[4] = {"+", "+i", "-", "-i"};
  std::string s = prefix[e];
  for (std::size_t j = 0; j < n_; ++j) {
    if (x_[j] && z_[j])
      s += 'Y';
    else if (x_[j])
      s += 'X';
    else if (z_[j])
      s += 'Z';
    else
      s += 'I';
  }
  return s;
}

std::size_t PauliString::weight() const {
  std::size_t w = 0;
  for (std::size_t j = 0; j < n_; ++j)
    if (x_[j] || z_[j]) ++w;
  return w;
}

std::uint64_t PauliString::x_mask() const {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < n_; ++j)
    if (x_[j]) m |= 1ull << (n_ - 1 - j);
  return m;
}

std::uint64_t PauliString::z_mask() const {
  std::uint64_t m = 0;
  for (std::size_t j = 0; j < n_; ++j)
    if (z_[j]) m |= 1ull << (n_ - 1 - j);
  return m;
}

namespace {
const cplx kPhase[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
}

CVector PauliString::apply(const CVector& v) const {
  const std::size_t dim = std::size_t(1) << n_;
  if (v.size() != dim) fail(ErrorKind::DimensionMismatch, "pauli apply: state size");
  const std::uint64_t xm = x_mask(), zm = z_mask();
  const cplx global = kPhase[phase_exp_];
  CVector out(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    // (X^x Z^z)|b> = (-1)^{z.b} |b ^ x>
    cplx amp = global * v[b];
    if (std::popcount(b & zm) & 1) amp = -amp;
    out[b ^ xm] = amp;
  }
  return out;
}

CMatrix PauliString::apply_left(const CMatrix& m) const {
  const std::size_t dim = std::size_t(1) << n_;
  if (m.rows() != dim || m.cols() != dim)
    fail(ErrorKind::DimensionMismatch, "pauli apply_left: matrix size");
  const std::uint64_t xm = x_mask(), zm = z_mask();
  const cplx global = kPhase[phase_exp_];
  CMatrix out(dim, dim);
  for (std::uint64_t r = 0; r < dim; ++r) {
    // Row r of P*M picks up row r^x of M with the phase of |r^x> -> |r>.
    cplx ph = global;
    if (std::popcount((r ^ xm) & zm) & 1) ph = -ph;
    for (std::uint64_t c = 0; c < dim; ++c) out(r, c) = ph * m(r ^ xm, c);
  }
  return out;
}

CMatrix PauliString::apply_right(const CMatrix& m) const {
  const std::size_t dim = std::size_t(1) << n_;
  if (m.rows() != dim || m.cols() != dim)
    fail(ErrorKind::DimensionMismatch, "pauli apply_right: matrix size");
  const std::uint64_t xm = x_mask(), zm = z_mask();
  const cplx global = kPhase[phase_exp_];
  CMatrix out(dim, dim);
  for (std::uint64_t c = 0; c < dim; ++c) {
    // Column c of M*P picks up column c^x of M; P_{c^x, c} = phase(c).
    cplx ph = global;
    if (std::popcount(c & zm) & 1) ph = -ph;
    for (std::uint64_t r = 0; r < dim; ++r) out(r, c) = ph * m(r, c ^ xm);
  }
  return out;
}

CMatrix PauliString::dense_matrix(std::size_t max_qubits) const {
  if (n_ > max_qubits) fail(ErrorKind::CapExceeded, "dense_matrix: qubit cap exceeded");
  const std::size_t dim = std::size_t(1) << n_;
  const std::uint64_t xm = x_mask(), zm = z_mask();
  const cplx global = kPhase[phase_exp_];
  CMatrix m(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    cplx ph = global;
    if (std::popcount(b & zm) & 1) ph = -ph;
    m(b ^ xm, b) = ph;
  }
  return m;
}

PauliString pauli_mul(const PauliString& p, const PauliString& q) {
  if (p.n_ != q.n_) fail(ErrorKind::DimensionMismatch, "pauli_mul: qubit count mismatch");
  PauliString r;
  r.n_ = p.n_;
  r.x_.resize(p.n_);
  r.z_.resize(p.n_);
  int phase = p.phase_exp_ + q.phase_exp_;
  for (std::size_t j = 0; j < p.n_; ++j) {
    // Z^{z_p} X^{x_q} reorder: each swap contributes (-1) = i^2.
    phase += 2 * (p.z_[j] & q.x_[j]);
    r.x_[j] = p.x_[j] ^ q.x_[j];
    r.z_[j] = p.z_[j] ^ q.z_[j];
  }
  r.phase_exp_ = phase % 4;
  return r;
}

bool commutes(const PauliString& p, const PauliString& q) {
  if (p.n_ != q.n_) fail(ErrorKind::DimensionMismatch, "commutes: qubit count mismatch");
  int acc = 0;
  for (std::size_t j = 0; j < p.n_; ++j)
    acc ^= (p.x_[j] & q.z_[j]) ^ (p.z_[j] & q.x_[j]);
  return acc == 0;
}

SubsetSelector SubsetSelector::from_index(std::size_t count, std::uint64_t index) {
  SubsetSelector k;
  k.bits.resize(count);
  for (std::size_t j = 0; j < count; ++j) k.bits[j] = (index >> j) & 1;
  return k;
}

SubsetSelector SubsetSelector::random(std::size_t count, Rng& rng) {
  SubsetSelector k;
  k.bits.resize(count);
  for (auto& b : k.bits) b = static_cast<std::uint8_t>(rng.bit());
  return k;
}

StabilizerGroup StabilizerGroup::validate(std::vector<PauliString> generators) {
  if (generators.empty())
    fail(ErrorKind::InvalidArgument, "stabilizer: empty generator list");
  const std::size_t n = generators[0].num_qubits();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (generators[i].num_qubits() != n)
      fail(ErrorKind::DimensionMismatch, "stabilizer: generators on different qubit counts");
    if (!generators[i].has_real_sign())
      fail(ErrorKind::ImaginaryPhase,
           "ImaginaryPhase(" + std::to_string(i) + "): generator " +
               generators[i].str() + " carries phase +/-i");
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j)
      if (!commutes(generators[i], generators[j]))
        fail(ErrorKind::NonCommuting, "NonCommuting(" + std::to_string(i) + "," +
                                          std::to_string(j) + ")");

  // GF(2) Gaussian elimination on symplectic rows with the original-index
  // subsets carried along. A row that cancels to identity names a subset
  // whose product is +/-I: dependent either way, and -I containment when the
  // tracked sign is -1.
  struct Row {
    std::vector<std::uint8_t> bits;  // x||z, length 2n
    std::uint64_t members;           // subset of original generators (bit i = gen i)
    PauliString product;
  };
  std::vector<Row> rows;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    Row r;
    r.bits.resize(2 * n);
    for (std::size_t q = 0; q < n; ++q) {
      r.bits[q] = generators[i].x_bit(q) ? 1 : 0;
      r.bits[n + q] = generators[i].z_bit(q) ? 1 : 0;
    }
    r.members = 1ull << i;
    r.product = generators[i];
    rows.push_back(std::move(r));
  }
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < 2 * n && pivot_row < rows.size(); ++col) {
    std::size_t sel = pivot_row;
    while (sel < rows.size() && rows[sel].bits[col] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[pivot_row]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != pivot_row && rows[r].bits[col]) {
        for (std::size_t c = 0; c < 2 * n; ++c) rows[r].bits[c] ^= rows[pivot_row].bits[c];
        rows[r].members ^= rows[pivot_row].members;
        rows[r].product = pauli_mul(rows[r].product, rows[pivot_row].product);
      }
    }
    ++pivot_row;
  }
  for (std::size_t r = pivot_row; r < rows.size(); ++r) {
    std::ostringstream subset;
    subset << "{";
    bool first = true;
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (rows[r].members >> i & 1) {
        if (!first) subset << ",";
        subset << i;
        first = false;
      }
    subset << "}";
    const bool minus = rows[r].product.sign() < 0;
    fail(ErrorKind::Dependent, "Dependent" + subset.str() + ": subset product is " +
                                   std::string(minus ? "-I" : "+I"));
  }

  return StabilizerGroup(n, std::move(generators));
}

PauliString StabilizerGroup::subset_product(const SubsetSelector& k) const {
  if (k.bits.size() != generators_.size())
    fail(ErrorKind::DimensionMismatch, "subset_product: selector length mismatch");
  PauliString acc = PauliString::identity(n_);
  for (std::size_t j = 0; j < generators_.size(); ++j)
    if (k.bits[j]) acc = pauli_mul(acc, generators_[j]);
  return acc;
}

PauliString subset_product(const StabilizerGroup& g, const SubsetSelector& k) {
  return g.subset_product(k);
}

}  // namespace qamsim

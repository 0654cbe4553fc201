// SPDX-License-Identifier: Apache-2.0
#include "qamsim/graphstate.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "qamsim/errors.hpp"

namespace qamsim {

Graph::Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges)
    : n_(n) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [a, b] : edges) {
    if (a == b)
      fail(ErrorKind::InvalidArgument, "graph: self-loop at vertex " + std::to_string(a));
    if (a >= n || b >= n)
      fail(ErrorKind::InvalidArgument, "graph: edge index out of range");
    auto e = std::minmax(a, b);
    if (!seen.insert({e.first, e.second}).second)
      fail(ErrorKind::InvalidArgument, "graph: duplicate edge (" + std::to_string(a) + "," +
                                           std::to_string(b) + ")");
  }
  edges_.assign(seen.begin(), seen.end());
}

std::vector<std::size_t> Graph::neighbors(std::size_t v) const {
  std::vector<std::size_t> out;
  for (auto [a, b] : edges_) {
    if (a == v) out.push_back(b);
    if (b == v) out.push_back(a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Graph Graph::path(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return Graph(n, std::move(e));
}

Graph Graph::cycle(std::size_t n) {
  if (n < 3) fail(ErrorKind::InvalidArgument, "cycle graph needs n >= 3");
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return Graph(n, std::move(e));
}

Graph Graph::grid(std::size_t rows, std::size_t cols) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  auto at = [cols](std::size_t r, std::size_t c) { return r * cols + c; };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.push_back({at(r, c), at(r, c + 1)});
      if (r + 1 < rows) e.push_back({at(r, c), at(r + 1, c)});
    }
  return Graph(rows * cols, std::move(e));
}

Graph Graph::random(std::size_t n, double edge_prob, Rng& rng) {
  std::vector<std::pair<std::size_t, std::size_t>> e;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (rng.bernoulli(edge_prob)) e.push_back({a, b});
  return Graph(n, std::move(e));
}

QuantumState graph_state(const Graph& g) {
  QuantumState s = plus_state(g.num_vertices());
  for (auto [a, b] : g.edges()) s = apply_cz(s, a, b);
  return s;
}

StabilizerGroup graph_stabilizers(const Graph& g) {
  std::vector<PauliString> gens;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    PauliString p = PauliString::single(g.num_vertices(), v, 'X');
    for (std::size_t u : g.neighbors(v))
      p = pauli_mul(p, PauliString::single(g.num_vertices(), u, 'Z'));
    gens.push_back(std::move(p));
  }
  return StabilizerGroup::validate(std::move(gens));
}

ConnectedSystem::ConnectedSystem(Graph g, std::size_t m,
                                 std::vector<std::pair<std::size_t, std::size_t>> connect)
    : graph_part(std::move(g)), witness_size(m), connect_edges(std::move(connect)) {
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [v, w] : connect_edges) {
    if (v >= graph_part.num_vertices())
      fail(ErrorKind::InvalidArgument, "connect edge: graph vertex out of range");
    if (w >= witness_size)
      fail(ErrorKind::InvalidArgument, "connect edge: witness index out of range");
    if (!seen.insert({v, w}).second)
      fail(ErrorKind::InvalidArgument, "connect edge: duplicate");
  }
}

QuantumState connect_witness(const QuantumState& witness, const ConnectedSystem& sys) {
  if (witness.num_qubits() != sys.witness_size)
    fail(ErrorKind::DimensionMismatch, "connect_witness: witness size mismatch");
  const std::size_t N = sys.graph_part.num_vertices();
  QuantumState g = graph_state(sys.graph_part);

  QuantumState joint = [&] {
    if (witness.is_pure())
      return QuantumState::pure(sys.total_qubits(),
                                kron(g.amplitudes(), witness.amplitudes()));
    return QuantumState::mixed_unchecked(sys.total_qubits(),
                                         kron(g.density(), witness.density()));
  }();
  for (auto [v, w] : sys.connect_edges) joint = apply_cz(joint, v, N + w);
  return joint;
}

StabilizerGroup extended_test_stabilizers(const ConnectedSystem& sys) {
  const std::size_t N = sys.graph_part.num_vertices();
  const std::size_t total = sys.total_qubits();
  std::vector<PauliString> gens;
  for (std::size_t v = 0; v < N; ++v) {
    PauliString p = PauliString::single(total, v, 'X');
    for (std::size_t u : sys.graph_part.neighbors(v))
      p = pauli_mul(p, PauliString::single(total, u, 'Z'));
    for (auto [gv, w] : sys.connect_edges)
      if (gv == v) p = pauli_mul(p, PauliString::single(total, N + w, 'Z'));
    gens.push_back(std::move(p));
  }
  return StabilizerGroup::validate(std::move(gens));
}

}  // namespace qamsim

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qamsim/densesim.hpp"
#include "qamsim/pauli.hpp"

namespace qamsim {

// Simple undirected graph: no self-loops, no duplicate edges.
class Graph {
 public:
  Graph(std::size_t n, std::vector<std::pair<std::size_t, std::size_t>> edges);

  std::size_t num_vertices() const { return n_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  std::vector<std::size_t> neighbors(std::size_t v) const;

  static Graph path(std::size_t n);
  static Graph cycle(std::size_t n);
  static Graph grid(std::size_t rows, std::size_t cols);
  static Graph random(std::size_t n, double edge_prob, Rng& rng);

 private:
  std::size_t n_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;  // normalized (a < b)
};

// |G> = prod_{(i,j) in E} CZ_ij |+>^n
QuantumState graph_state(const Graph& g);

// One generator per vertex: X on the vertex, Z on each neighbor.
StabilizerGroup graph_stabilizers(const Graph& g);

// A graph register V1 = {0..N-1} plus a witness register V2 = {N..N+m-1},
// joined by CZ edges (v1, w) with w indexing witness qubits from 0.
struct ConnectedSystem {
  Graph graph_part;
  std::size_t witness_size;
  std::vector<std::pair<std::size_t, std::size_t>> connect_edges;

  ConnectedSystem(Graph g, std::size_t m,
                  std::vector<std::pair<std::size_t, std::size_t>> connect);

  std::size_t total_qubits() const { return graph_part.num_vertices() + witness_size; }
};

// (prod_{e in connect} CZ_e)(|G> tensor |witness>), graph register first.
QuantumState connect_witness(const QuantumState& witness, const ConnectedSystem& sys);

// Graph generators extended to N+m qubits, with Z reaching into the witness
// register along the connect edges. The connected honest state is a +1
// eigenstate of every one of them.
StabilizerGroup extended_test_stabilizers(const ConnectedSystem& sys);

}  // namespace qamsim

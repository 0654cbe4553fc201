// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "qamsim/graphstate.hpp"
#include "qamsim/hstab.hpp"
#include "qamsim/protocol.hpp"
#include "qamsim/stabtest.hpp"

using namespace qamsim;

namespace {

StabilizerGroup cycle_group(std::size_t n) { return graph_stabilizers(Graph::cycle(n)); }

void BM_PauliMul(benchmark::State& state) {
  const std::size_t n = state.range(0);
  Rng rng(1);
  StabilizerGroup g = cycle_group(n);
  PauliString a = g.subset_product(SubsetSelector::random(n, rng));
  PauliString b = g.subset_product(SubsetSelector::random(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(pauli_mul(a, b));
}
BENCHMARK(BM_PauliMul)->Arg(8)->Arg(32)->Arg(128);

void BM_SubsetProduct(benchmark::State& state) {
  const std::size_t n = state.range(0);
  Rng rng(2);
  StabilizerGroup g = cycle_group(n);
  SubsetSelector k = SubsetSelector::random(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(g.subset_product(k));
}
BENCHMARK(BM_SubsetProduct)->Arg(8)->Arg(32)->Arg(128);

void BM_LambdaProjector(benchmark::State& state) {
  StabilizerGroup g = cycle_group(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(lambda_projector(g));
}
BENCHMARK(BM_LambdaProjector)->Arg(4)->Arg(6)->Arg(8);

void BM_HermitianEigensystem(benchmark::State& state) {
  Rng rng(3);
  const std::size_t dim = state.range(0);
  CMatrix a = random_gaussian_matrix(dim, dim, rng);
  CMatrix h = a + a.adjoint();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eigensystem(h));
}
BENCHMARK(BM_HermitianEigensystem)->Arg(16)->Arg(32)->Arg(64);

void BM_ExactPassProbability(benchmark::State& state) {
  Rng rng(4);
  StabilizerGroup g = cycle_group(state.range(0));
  QuantumState rho = random_mixed_state(g.num_qubits(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(exact_pass_probability(rho, g));
}
BENCHMARK(BM_ExactPassProbability)->Arg(4)->Arg(6)->Arg(8);

void BM_TestRound(benchmark::State& state) {
  Rng rng(5);
  StabilizerGroup g = cycle_group(4);
  QuantumState rho = graph_state(Graph::cycle(4));
  for (auto _ : state) benchmark::DoNotOptimize(run_test_round(rho, g, rng));
}
BENCHMARK(BM_TestRound);

void BM_ProtocolRoundDirect(benchmark::State& state) {
  Rng rng(6);
  ProtocolInstance inst = toy_yes_instance();
  MerlinStrategy honest = MerlinStrategy::honest();
  for (auto _ : state)
    benchmark::DoNotOptimize(run_protocol_round(inst, honest, RunMode::Direct, rng));
}
BENCHMARK(BM_ProtocolRoundDirect);

void BM_ProtocolRoundMbqc(benchmark::State& state) {
  Rng rng(7);
  ProtocolInstance inst = toy_yes_instance();
  MerlinStrategy honest = MerlinStrategy::honest();
  for (auto _ : state)
    benchmark::DoNotOptimize(run_protocol_round(inst, honest, RunMode::Mbqc, rng));
}
BENCHMARK(BM_ProtocolRoundMbqc);

void BM_HStab(benchmark::State& state) {
  Rng rng(8);
  StabilizerGroup g = cycle_group(state.range(0));
  HstabInstance inst{g, random_observable(g.num_qubits(), rng), 0.9, 0.1};
  for (auto _ : state) benchmark::DoNotOptimize(h_stab(inst));
}
BENCHMARK(BM_HStab)->Arg(3)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();

// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Every tolerance is pinned here, in code.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qamsim/densesim.hpp"
#include "qamsim/graphstate.hpp"
#include "qamsim/hstab.hpp"
#include "qamsim/mbqc.hpp"
#include "qamsim/protocol.hpp"
#include "qamsim/stabtest.hpp"

using namespace qamsim;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail,
            double seconds) {
  std::printf("%s  %d. %-34s %s  (%.1fs)\n", pass ? "PASS" : "FAIL", index, name.c_str(),
              detail.c_str(), seconds);
  if (!pass) ++g_failures;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

StabilizerGroup random_graph_group(std::size_t min_n, std::size_t max_n, Rng& rng,
                                   bool random_signs) {
  std::size_t n = min_n + rng.index(max_n - min_n + 1);
  Graph g = Graph::random(n, 0.5, rng);
  StabilizerGroup base = graph_stabilizers(g);
  if (!random_signs) return base;
  std::vector<PauliString> gens;
  for (const PauliString& p : base.generators())
    gens.push_back(rng.bit() ? p.negated() : p);
  return StabilizerGroup::validate(std::move(gens));
}

// ---- 1. pass-probability identity ------------------------------------------
void criterion_1() {
  Timer timer;
  Rng rng(1001);
  const int cases = 500;
  double worst_identity = 0.0, worst_routes = 0.0;
  for (int t = 0; t < cases; ++t) {
    StabilizerGroup g = random_graph_group(2, 5, rng, t % 2 == 0);
    QuantumState rho =
        t % 3 == 0 ? random_pure_state(g.num_qubits(), rng) : random_mixed_state(g.num_qubits(), rng);

    const double exact = exact_pass_probability(rho, g);
    LambdaProjector lambda = lambda_projector(g);
    const double via_lambda = 0.5 * (1.0 + expectation(rho, lambda.matrix));
    worst_identity = std::max(worst_identity, std::abs(exact - via_lambda));

    const double via_enum = pass_probability_by_enumeration(rho, g);
    worst_routes = std::max(worst_routes, std::abs(via_enum - via_lambda));
  }
  const bool pass = worst_identity <= 1e-9 && worst_routes <= 1e-9 && timer.elapsed() < 60.0;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%d cases, max |p - (1+Tr(L r))/2| = %.2e, max route gap = %.2e", cases,
                worst_identity, worst_routes);
  report(1, "pass-probability identity", pass, detail, timer.elapsed());
}

// ---- 2. gentle-measurement inequality ---------------------------------------
void criterion_2() {
  Timer timer;
  Rng rng(1002);
  const int cases = 1000;
  int violations = 0;
  double worst_margin = 1e9;
  for (int t = 0; t < cases; ++t) {
    StabilizerGroup g = random_graph_group(2, 5, rng, true);
    QuantumState rho = random_mixed_state(g.num_qubits(), rng);
    GentleReport rep = gentle_measurement_check(rho, g);
    if (!(rep.lhs <= rep.rhs + 1e-9)) ++violations;
    worst_margin = std::min(worst_margin, rep.rhs - rep.lhs);
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail), "%d cases, %d violations, min(rhs - lhs) = %.3e",
                cases, violations, worst_margin);
  report(2, "gentle-measurement inequality", violations == 0 && timer.elapsed() < 60.0, detail,
         timer.elapsed());
}

// ---- 3. closeness sandwich ---------------------------------------------------
void criterion_3() {
  Timer timer;
  Rng rng(1003);
  const int cases = 1000;
  int violations = 0;
  for (int t = 0; t < cases; ++t) {
    StabilizerGroup g = random_graph_group(2, 4, rng, true);
    const std::size_t n = g.num_qubits();

    // Construct rho to satisfy the hypothesis p_pass >= 1 - eps.
    const double eps = 1e-4 + 0.2 * rng.uniform();
    QuantumState noise = random_mixed_state(n, rng);
    QuantumState core = nearest_stabilized_state(random_mixed_state(n, rng), g);
    const double p_noise = exact_pass_probability(noise, g);
    const double tmax = std::min(1.0, eps / std::max(1.0 - p_noise, 1e-9));
    const double tmix = tmax * rng.uniform();
    CMatrix rho_m = core.density() * cplx(1.0 - tmix, 0.0) + noise.density() * cplx(tmix, 0.0);
    QuantumState rho = QuantumState::mixed_unchecked(n, std::move(rho_m));

    ObservableElement m = random_observable(n, rng);
    BoundsReport rep = closeness_bounds(rho, g, m, eps);
    if (!(rep.lower <= rep.actual + 1e-9 && rep.actual <= rep.upper + 1e-9)) ++violations;
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "%d cases, %d violations", cases, violations);
  report(3, "closeness sandwich", violations == 0, detail, timer.elapsed());
}

// ---- 4. parameter arithmetic -------------------------------------------------
void criterion_4() {
  Timer timer;
  bool pass = true;
  std::string detail = "all equalities within 1e-12";

  ProtocolParams p = make_params(1, 2.0 / 3.0, 1.0 / 3.0);
  auto close = [](double x, double y) { return std::abs(x - y) <= 1e-12; };
  pass &= close(p.eps, 1.0 / 128.0);
  pass &= close(p.delta, 0.25);
  pass &= close(p.q, 1.0 / 97.0);
  pass &= close(p.gap, 1.0 / 1164.0);
  pass &= close(reference_gap_bound(1), 1.0 / 1548.0);
  pass &= p.gap >= reference_gap_bound(1) - 1e-12;

  QmaParams qp = qma_params(2.0 / 3.0, 1.0 / 3.0);
  pass &= close(qp.eps, 1.0 / 288.0);
  pass &= close(qp.delta, 1.0 / 6.0);
  pass &= close(qp.q_star, 1.0 / 145.0);
  pass &= close(qp.delta2, 1.0 / 870.0);
  pass &= close(qp.delta1, qp.delta2);
  pass &= qp.delta2 >= 1.0 / 3456.0 - 1e-12;

  if (!pass) detail = "a pinned equality failed";
  report(4, "parameter arithmetic", pass, detail, timer.elapsed());
}

// ---- 5. protocol completeness ------------------------------------------------
void criterion_5() {
  Timer timer;
  Rng rng(1005);
  ProtocolInstance yes = toy_yes_instance();

  auto honest_witness = [&](std::uint64_t y) { return yes.honest_witness.at(y); };
  const double p_circuit = qam_acceptance(yes.circuit, honest_witness).value;
  const double exact = yes.params.q * p_circuit + (1.0 - yes.params.q);

  const std::uint64_t rounds = 100000;
  RoundStats st = run_protocol_rounds(yes, MerlinStrategy::honest(), RunMode::Direct, rounds, rng);
  const double sigma = std::sqrt(exact * (1.0 - exact) / static_cast<double>(rounds));

  const bool mc_ok = std::abs(st.rate - exact) <= 4.0 * sigma && timer.elapsed() < 120.0;
  const bool alpha_ok = p_circuit >= yes.params.a && exact >= yes.params.alpha - 1e-12;
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "p_circuit = %.6f, exact = %.9f, mc = %.9f (|d| = %.1f sigma), alpha = %.9f",
                p_circuit, exact, st.rate, sigma > 0 ? std::abs(st.rate - exact) / sigma : 0.0,
                yes.params.alpha);
  report(5, "protocol completeness", mc_ok && alpha_ok, detail, timer.elapsed());
}

// ---- 6. protocol soundness ---------------------------------------------------
void criterion_6() {
  Timer timer;
  Rng rng(1006);
  ProtocolInstance no = toy_no_instance();
  const double q = no.params.q;
  const double delta = no.params.delta;

  bool spectral_ok = true;
  double avg_cheat = 0.0;
  for (std::uint64_t y = 0; y < no.circuit.num_challenges(); ++y) {
    const double cheat = optimal_cheat(no, y);
    const double b_y = no.circuit.best_witness_acceptance(y);
    spectral_ok &= cheat <= q * (b_y + delta) + (1.0 - q) + 1e-9;
    avg_cheat += cheat / static_cast<double>(no.circuit.num_challenges());
  }
  const double b_exact = instance_exact_soundness(no.circuit);
  const double beta_exact = q * (b_exact + delta) + (1.0 - q);
  spectral_ok &= avg_cheat <= beta_exact + 1e-9;

  bool adversaries_ok = true;
  const std::uint64_t rounds = 25000;
  for (const MerlinStrategy& strat :
       {MerlinStrategy::honest(), MerlinStrategy::depolarizing(0.2),
        MerlinStrategy::fixed_state(maximally_mixed_state(3)), MerlinStrategy::optimal()}) {
    RoundStats st = run_protocol_rounds(no, strat, RunMode::Direct, rounds, rng);
    const double sigma =
        std::sqrt(std::max(avg_cheat * (1.0 - avg_cheat), 1e-12) / static_cast<double>(rounds));
    adversaries_ok &= st.rate <= avg_cheat + 4.0 * sigma;
  }
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "avg lambda_max = %.9f <= beta(b_exact) = %.9f; 4 adversaries below optimum",
                avg_cheat, beta_exact);
  report(6, "protocol soundness", spectral_ok && adversaries_ok, detail, timer.elapsed());
}

// ---- 7. mbqc equivalence -----------------------------------------------------
void criterion_7() {
  Timer timer;
  Rng rng(1007);
  const double dev = pattern_vs_circuit(teleportation_pattern(), teleportation_resource,
                                        gate_matrix("H"), 100, rng);

  ProtocolInstance yes = toy_yes_instance();
  const std::uint64_t rounds = 100000;
  RoundStats direct =
      run_protocol_rounds(yes, MerlinStrategy::honest(), RunMode::Direct, rounds, rng);
  RoundStats mbqc = run_protocol_rounds(yes, MerlinStrategy::honest(), RunMode::Mbqc, rounds, rng);
  const double sigma =
      std::sqrt(direct.std_error * direct.std_error + mbqc.std_error * mbqc.std_error);

  const bool pattern_ok = dev <= 1e-9;
  const bool modes_ok = std::abs(direct.rate - mbqc.rate) <= 4.0 * sigma + 1e-9;
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "teleport deficit = %.2e; direct = %.6f vs mbqc = %.6f (tol %.1e)", dev,
                direct.rate, mbqc.rate, 4.0 * sigma + 1e-9);
  report(7, "mbqc equivalence", pattern_ok && modes_ok, detail, timer.elapsed());
}

// ---- 8. h_stab oracle equivalence --------------------------------------------
void criterion_8() {
  Timer timer;
  Rng rng(1008);

  StabilizerGroup bell = StabilizerGroup::validate(
      {PauliString::from_string("+XX"), PauliString::from_string("+ZZ")});
  CMatrix m00(4, 4);
  m00(0, 0) = 1.0;
  HstabInstance bell_inst{bell, ObservableElement::validate(std::move(m00)), 0.9, 0.1};
  const double h_bell = h_stab(bell_inst);
  bool pass = std::abs(h_bell - 0.5) <= 1e-9;

  // Codespaces of dimension 1, 2, 4 with random observables.
  double worst_gap = 0.0;
  for (int t = 0; t < 9; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);  // 2..4 qubits
    const std::size_t keep = n - static_cast<std::size_t>(t % 3);  // dim 2^{n-keep} <= 4
    Graph g = Graph::random(n, 0.6, rng);
    StabilizerGroup full = graph_stabilizers(g);
    std::vector<PauliString> gens(full.generators().begin(),
                                  full.generators().begin() + keep);
    StabilizerGroup group = StabilizerGroup::validate(std::move(gens));
    HstabInstance inst{group, random_observable(n, rng), 0.9, 0.1};
    const double exact = h_stab(inst);
    const double sampled = h_stab_sampling_oracle(inst, 10000, rng);
    if (sampled > exact + 1e-9) pass = false;
    worst_gap = std::max(worst_gap, exact - sampled);
  }
  pass &= worst_gap <= 0.01;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "Bell/|00><00| = %.9f; sampling never above exact, worst gap = %.4f", h_bell,
                worst_gap);
  report(8, "h_stab oracle equivalence", pass, detail, timer.elapsed());
}

// ---- 9. qma soundness sweep --------------------------------------------------
void criterion_9() {
  Timer timer;
  Rng rng(1009);
  const int cases = 200;
  int violations = 0;
  QmaParams params = qma_params(2.0 / 3.0, 1.0 / 3.0);
  for (int t = 0; t < cases; ++t) {
    std::size_t n = 2 + rng.index(3);  // 2..4 qubits
    HstabInstance inst = random_no_instance(n, 2.0 / 3.0, 1.0 / 3.0, rng);
    QmaSoundnessReport rep = qma_soundness_check(inst, params);
    if (!(rep.optimal_value <= rep.bound + 1e-9)) ++violations;
  }
  char detail[64];
  std::snprintf(detail, sizeof(detail), "%d no-instances, %d violations", cases, violations);
  report(9, "qma soundness sweep", violations == 0, detail, timer.elapsed());
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}

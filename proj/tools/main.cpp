// SPDX-License-Identifier: Apache-2.0
//
// qamsim: exact desk-scale simulation of stabilizer tests, graph-state
// verification protocols, and the associated codespace optimization problem.
//
// Subcommands:
//   validate  check a stabilizer generator file
//   test      run the stabilizer test against a state, with exact cross-checks
//   protocol  run the two-branch verification protocol on an instance
//   hstab     solve a codespace-optimization instance both ways
//   params    evaluate the parameter schedules

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "qamsim/errors.hpp"
#include "qamsim/json_io.hpp"
#include "qamsim/rng.hpp"

namespace {

constexpr const char* kVersion = "qamsim 0.1.0";

using namespace qamsim;

json base_report(std::uint64_t seed) {
  json j;
  j["version"] = kVersion;
  j["seed"] = seed;
  return j;
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    write_json_file(out_path, report);
  }
}

// State specs accepted by `test`: plus:N, zero:N, basis:BITS, mixed:N,
// graph:FILE (the graph state of a graph file), file:PATH (JSON state).
QuantumState parse_state_spec(const std::string& spec) {
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    fail(ErrorKind::Parse, "state spec must look like kind:arg, got " + spec);
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  if (kind == "plus") return plus_state(std::stoul(arg));
  if (kind == "zero") return basis_state(std::stoul(arg), 0);
  if (kind == "basis") {
    std::uint64_t idx = 0;
    for (char c : arg) {
      if (c != '0' && c != '1') fail(ErrorKind::Parse, "basis spec wants a bit string");
      idx = (idx << 1) | (c == '1' ? 1 : 0);
    }
    return basis_state(arg.size(), idx);
  }
  if (kind == "mixed") return maximally_mixed_state(std::stoul(arg));
  if (kind == "graph") return graph_state(graph_from_json(load_json_file(arg)));
  if (kind == "file") return state_from_json(load_json_file(arg));
  fail(ErrorKind::Parse, "unknown state spec kind: " + kind);
}

MerlinStrategy parse_strategy(const std::string& spec) {
  if (spec == "honest") return MerlinStrategy::honest();
  if (spec == "optimal") return MerlinStrategy::optimal();
  auto colon = spec.find(':');
  if (colon != std::string::npos) {
    const std::string kind = spec.substr(0, colon);
    const std::string arg = spec.substr(colon + 1);
    if (kind == "depolarizing") return MerlinStrategy::depolarizing(std::stod(arg));
    if (kind == "fixed") return MerlinStrategy::fixed_state(state_from_json(load_json_file(arg)));
  }
  fail(ErrorKind::Parse,
       "unknown strategy: " + spec + " (want honest|depolarizing:mu|fixed:file|optimal)");
}

int cmd_validate(const std::string& path, std::uint64_t seed, const std::string& out_path) {
  json report = base_report(seed);
  report["file"] = path;
  try {
    StabilizerGroup g = stabilizer_from_json(load_json_file(path));
    report["valid"] = true;
    report["n"] = g.num_qubits();
    report["generators"] = g.num_generators();
    emit(report, out_path);
    return 0;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Io || e.kind() == ErrorKind::Parse) throw;
    report["valid"] = false;
    report["diagnostic"] = e.what();
    emit(report, out_path);
    return 1;
  }
}

int cmd_test(const std::string& state_spec, const std::string& stab_path,
             std::uint64_t rounds, std::uint64_t seed, double eps,
             const std::string& observable_path, const std::string& out_path) {
  StabilizerGroup g = stabilizer_from_json(load_json_file(stab_path));
  QuantumState rho = parse_state_spec(state_spec);
  Rng rng(seed);

  json report = base_report(seed);
  report["rounds"] = rounds;
  report["state"] = state_spec;
  report["stabilizer"] = stab_path;

  TestReport tr = run_test_rounds(rho, g, rounds, rng);
  report["passes"] = tr.passes;
  report["sampled_rate"] = rounds > 0 ? real_json(tr.sampled_pass_rate) : json();
  report["exact"] = real_json(*tr.exact_pass_probability);

  IdentityReport idr = pass_probability_identity_check(rho, g);
  report["identity_check"] = {{"enumeration", real_json(idr.lhs)},
                              {"lambda_form", real_json(idr.rhs)},
                              {"holds", idr.holds}};

  GentleReport gr = gentle_measurement_check(rho, g);
  report["gentle"] = {{"lhs", real_json(gr.lhs)}, {"rhs", real_json(gr.rhs)},
                      {"holds", gr.holds}};

  const double p_pass = *tr.exact_pass_probability;
  double used_eps = eps > 0.0 ? eps : std::max(1.0 - p_pass, 1e-12) * 1.000001;
  ObservableElement m = observable_path.empty()
                            ? ObservableElement::identity(g.num_qubits())
                            : observable_from_json(load_json_file(observable_path));
  if (p_pass >= 1.0 - used_eps) {
    BoundsReport br = closeness_bounds(rho, g, m, used_eps);
    report["sandwich"] = {{"eps", real_json(br.epsilon)},
                          {"lower", real_json(br.lower)},
                          {"actual", real_json(br.actual)},
                          {"upper", real_json(br.upper)},
                          {"holds", br.holds}};
  } else {
    report["sandwich"] = {{"eps", real_json(used_eps)},
                          {"skipped", "hypothesis p_pass >= 1 - eps not met"}};
  }
  emit(report, out_path);
  return 0;
}

int cmd_protocol(const std::string& instance_arg, const std::string& mode_name,
                 const std::string& strategy_spec, std::uint64_t rounds, std::uint64_t seed,
                 const std::string& out_path) {
  ProtocolInstance inst = [&] {
    if (instance_arg == "builtin:yes") return toy_yes_instance();
    if (instance_arg == "builtin:no") return toy_no_instance();
    return protocol_instance_from_json(load_json_file(instance_arg));
  }();
  RunMode mode;
  if (mode_name == "direct")
    mode = RunMode::Direct;
  else if (mode_name == "mbqc")
    mode = RunMode::Mbqc;
  else
    fail(ErrorKind::Parse, "unknown mode: " + mode_name + " (want direct|mbqc)");
  const std::string chosen_strategy =
      strategy_spec.empty() ? inst.default_strategy : strategy_spec;
  MerlinStrategy strategy = parse_strategy(chosen_strategy);
  Rng rng(seed);

  json report = base_report(seed);
  report["instance"] = instance_arg;
  report["mode"] = mode_name;
  report["strategy"] = chosen_strategy;
  report["params"] = params_to_json(inst.params);

  AcceptanceBreakdown bd = soundness_breakdown(inst, strategy);
  json per_y = json::array();
  for (const ChallengeRecord& rec : bd.per_challenge) {
    const double b_y = inst.circuit.best_witness_acceptance(rec.y);
    const double beta_y =
        inst.params.q * (b_y + inst.params.delta) + (1.0 - inst.params.q);
    per_y.push_back({{"y", rec.y},
                     {"p_computation", real_json(rec.p_computation)},
                     {"p_test", real_json(rec.p_test)},
                     {"in_y1", rec.in_y1},
                     {"optimal_cheat", real_json(optimal_cheat(inst, rec.y))},
                     {"best_witness_acceptance", real_json(b_y)},
                     {"beta_bound", real_json(beta_y)}});
  }
  report["per_challenge"] = per_y;
  report["exact_acceptance"] = real_json(bd.p_acc);
  report["y1_count"] = bd.y1_count;
  report["y2_count"] = bd.y2_count;

  auto honest_witness = [&](std::uint64_t y) { return inst.honest_witness.at(y); };
  QamAcceptanceReport qar = qam_acceptance(inst.circuit, honest_witness);
  report["honest_circuit_acceptance"] = real_json(qar.value);
  report["instance_exact_soundness"] = real_json(instance_exact_soundness(inst.circuit));
  report["subset_average_identity_defect"] =
      real_json(subset_average_identity_defect(inst.system));

  if (rounds > 0) {
    RoundStats st = run_protocol_rounds(inst, strategy, mode, rounds, rng);
    report["monte_carlo"] = {{"rounds", st.rounds},
                             {"accepts", st.accepts},
                             {"rate", real_json(st.rate)},
                             {"std_error", real_json(st.std_error)}};
  }
  emit(report, out_path);
  return 0;
}

int cmd_hstab(const std::string& path, std::uint64_t samples, std::uint64_t seed,
              const std::string& out_path) {
  HstabInstance inst = hstab_instance_from_json(load_json_file(path));
  Rng rng(seed);

  json report = base_report(seed);
  report["instance"] = path;
  const double h = h_stab(inst);
  report["h"] = real_json(h);
  report["a"] = real_json(inst.a);
  report["b"] = real_json(inst.b);
  report["decision"] = h >= inst.a ? "yes" : (h <= inst.b ? "no" : "between");
  if (samples > 0) {
    const double sampled = h_stab_sampling_oracle(inst, samples, rng);
    report["sampling_oracle"] = {{"samples", samples},
                                 {"value", real_json(sampled)},
                                 {"within_exact", sampled <= h + kValidityTol}};
  }
  QmaParams qp = qma_params(inst.a, inst.b);
  report["qma_params"] = qma_params_to_json(qp);
  if (h <= inst.b + kValidityTol) {
    QmaSoundnessReport sr = qma_soundness_check(inst, qp);
    report["soundness_check"] = {{"optimal_value", real_json(sr.optimal_value)},
                                 {"bound", real_json(sr.bound)},
                                 {"holds", sr.holds}};
  }
  emit(report, out_path);
  return 0;
}

int cmd_params(int x_size, double a, double b, bool qma, std::uint64_t seed,
               const std::string& out_path) {
  json report = base_report(seed);
  if (qma) {
    report["qma"] = qma_params_to_json(qma_params(a, b));
  } else {
    report["protocol"] = params_to_json(make_params(x_size, a, b));
  }
  emit(report, out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stabilizer-test verification protocol simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string out_path;
  app.add_option("--out", out_path, "Write the JSON report to a file instead of stdout");

  std::uint64_t seed = 20260808;
  app.add_option("--seed", seed, "Seed for all randomness");

  int dense_cap = 0;
  app.add_option("--dense-cap", dense_cap, "Override the dense qubit caps (pure and mixed)");

  auto* validate = app.add_subcommand("validate", "Validate a stabilizer generator file");
  std::string stab_path;
  validate->add_option("file", stab_path, "Stabilizer JSON file")->required();

  auto* test = app.add_subcommand("test", "Run the stabilizer test with exact cross-checks");
  std::string state_spec = "plus:2";
  std::string test_stab_path;
  std::string observable_path;
  std::uint64_t rounds = 100000;
  double eps = 0.0;
  test->add_option("--state", state_spec,
                   "State spec: plus:N|zero:N|basis:BITS|mixed:N|graph:FILE|file:PATH")
      ->required();
  test->add_option("--stabilizer", test_stab_path, "Stabilizer JSON file")->required();
  test->add_option("--rounds", rounds, "Monte Carlo rounds (0 = exact only)");
  test->add_option("--eps", eps, "Closeness budget; default 1 - p_pass");
  test->add_option("--observable", observable_path, "POVM element JSON for the sandwich");

  auto* protocol = app.add_subcommand("protocol", "Run the verification protocol");
  std::string instance_arg;
  std::string mode_name = "direct";
  std::string strategy_spec;  // empty: use the instance file's selection
  std::uint64_t protocol_rounds = 100000;
  protocol->add_option("instance", instance_arg,
                       "Instance JSON file, or builtin:yes / builtin:no")
      ->required();
  protocol->add_option("--mode", mode_name, "direct|mbqc");
  protocol->add_option("--strategy", strategy_spec,
                       "honest|depolarizing:mu|fixed:file|optimal (default: instance file)");
  protocol->add_option("--rounds", protocol_rounds, "Monte Carlo rounds (0 = exact only)");

  auto* hstab_cmd = app.add_subcommand("hstab", "Solve a codespace-optimization instance");
  std::string hstab_path;
  std::uint64_t samples = 10000;
  hstab_cmd->add_option("instance", hstab_path, "Instance JSON file")->required();
  hstab_cmd->add_option("--samples", samples, "Sampling-oracle budget (0 = skip)");

  auto* params_cmd = app.add_subcommand("params", "Evaluate the parameter schedules");
  int x_size = 1;
  double a = 2.0 / 3.0;
  double b = 1.0 / 3.0;
  bool qma = false;
  params_cmd->add_option("--x-size", x_size, "Instance size |x|");
  params_cmd->add_option("--a", a, "Completeness bound");
  params_cmd->add_option("--b", b, "Soundness bound");
  params_cmd->add_flag("--qma", qma, "Evaluate the codespace-problem schedule instead");

  CLI11_PARSE(app, argc, argv);

  try {
    if (dense_cap > 0) {
      qamsim::dense_caps().pure_qubits = dense_cap;
      qamsim::dense_caps().mixed_qubits = dense_cap;
    }
    if (validate->parsed()) return cmd_validate(stab_path, seed, out_path);
    if (test->parsed())
      return cmd_test(state_spec, test_stab_path, rounds, seed, eps, observable_path, out_path);
    if (protocol->parsed())
      return cmd_protocol(instance_arg, mode_name, strategy_spec, protocol_rounds, seed,
                          out_path);
    if (hstab_cmd->parsed()) return cmd_hstab(hstab_path, samples, seed, out_path);
    if (params_cmd->parsed()) return cmd_params(x_size, a, b, qma, seed, out_path);
  } catch (const qamsim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.kind() == qamsim::ErrorKind::Io || e.kind() == qamsim::ErrorKind::Parse) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// SPDX-License-Identifier: Apache-2.0
#include "qamsim/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "qamsim/errors.hpp"

namespace qamsim {

double canonical_real(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::strtod(buf, nullptr);
}

json real_json(double x) { return json(canonical_real(x)); }

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Io, "cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(ErrorKind::Parse, "JSON parse error in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::Io, "cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

namespace {

void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::Parse, what);
}

}  // namespace

StabilizerGroup stabilizer_from_json(const json& j) {
  require(j.is_object() && j.contains("n") && j.contains("generators"),
          "stabilizer file: need {\"n\", \"generators\"}");
  const std::size_t n = j.at("n").get<std::size_t>();
  std::vector<PauliString> gens;
  for (const auto& item : j.at("generators")) {
    require(item.is_string(), "stabilizer file: generator entries must be strings");
    const std::string text = item.get<std::string>();
    // The file format admits only real signs; a stabilizer generator with
    // phase +/-i would square to -I.
    if (text.find('i') != std::string::npos)
      fail(ErrorKind::ImaginaryPhase,
           "ImaginaryPhase: generator \"" + text + "\" has an i/-i prefix");
    PauliString p = PauliString::from_string(text);
    require(p.num_qubits() == n,
            "stabilizer file: generator \"" + text + "\" is not on " + std::to_string(n) +
                " qubits");
    if (!p.has_real_sign())
      fail(ErrorKind::ImaginaryPhase,
           "ImaginaryPhase: generator \"" + text + "\" has imaginary phase");
    gens.push_back(std::move(p));
  }
  return StabilizerGroup::validate(std::move(gens));
}

json stabilizer_to_json(const StabilizerGroup& g) {
  json j;
  j["n"] = g.num_qubits();
  json gens = json::array();
  for (const PauliString& p : g.generators()) gens.push_back(p.str());
  j["generators"] = gens;
  return j;
}

Graph graph_from_json(const json& j) {
  require(j.is_object() && j.contains("n") && j.contains("edges"),
          "graph file: need {\"n\", \"edges\"}");
  const std::size_t n = j.at("n").get<std::size_t>();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : j.at("edges")) {
    require(e.is_array() && e.size() == 2, "graph file: edges must be [a, b] pairs");
    edges.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
  }
  return Graph(n, std::move(edges));
}

json graph_to_json(const Graph& g) {
  json j;
  j["n"] = g.num_vertices();
  json edges = json::array();
  for (auto [a, b] : g.edges()) edges.push_back(json::array({a, b}));
  j["edges"] = edges;
  return j;
}

ConnectedSystem connected_system_from_json(const json& j) {
  require(j.is_object() && j.contains("graph") && j.contains("m") && j.contains("connect"),
          "system file: need {\"graph\", \"m\", \"connect\"}");
  Graph g = graph_from_json(j.at("graph"));
  const std::size_t m = j.at("m").get<std::size_t>();
  std::vector<std::pair<std::size_t, std::size_t>> connect;
  for (const auto& e : j.at("connect")) {
    require(e.is_array() && e.size() == 2, "system file: connect entries must be [v, w]");
    connect.push_back({e[0].get<std::size_t>(), e[1].get<std::size_t>()});
  }
  return ConnectedSystem(std::move(g), m, std::move(connect));
}

json connected_system_to_json(const ConnectedSystem& sys) {
  json j;
  j["graph"] = graph_to_json(sys.graph_part);
  j["m"] = sys.witness_size;
  json connect = json::array();
  for (auto [v, w] : sys.connect_edges) connect.push_back(json::array({v, w}));
  j["connect"] = connect;
  return j;
}

namespace {

cplx entry_from_json(const json& e) {
  if (e.is_number()) return cplx(e.get<double>(), 0.0);
  require(e.is_array() && e.size() == 2, "matrix entries must be numbers or [re, im]");
  return cplx(e[0].get<double>(), e[1].get<double>());
}

}  // namespace

CMatrix matrix_from_json(const json& j) {
  require(j.is_array() && !j.empty(), "matrix: expected a nonempty array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    require(j[r].is_array() && j[r].size() == cols, "matrix: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = entry_from_json(j[r][c]);
  }
  return m;
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c)
      row.push_back(json::array({real_json(m(r, c).real()), real_json(m(r, c).imag())}));
    rows.push_back(row);
  }
  return rows;
}

ObservableElement observable_from_json(const json& j) {
  return ObservableElement::validate(matrix_from_json(j));
}

QuantumState state_from_json(const json& j) {
  if (j.is_string() || (j.is_object() && j.contains("named"))) {
    const std::string name = j.is_string() ? j.get<std::string>()
                                           : j.at("named").get<std::string>();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    if (name == "plus") return plus_state(1);
    if (name == "zero") return basis_state(1, 0);
    if (name == "one") return basis_state(1, 1);
    if (name == "minus")
      return QuantumState::pure(1, {cplx(inv_sqrt2, 0.0), cplx(-inv_sqrt2, 0.0)});
    fail(ErrorKind::Parse, "unknown named state: " + name);
  }
  require(j.is_object(), "state: expected an object");
  if (j.contains("amplitudes")) {
    CVector v;
    for (const auto& e : j.at("amplitudes")) v.push_back(entry_from_json(e));
    std::size_t n = 0;
    while ((std::size_t(1) << n) < v.size()) ++n;
    require((std::size_t(1) << n) == v.size(), "state: amplitude count is not a power of 2");
    return QuantumState::pure(n, std::move(v));
  }
  if (j.contains("density")) {
    CMatrix m = matrix_from_json(j.at("density"));
    std::size_t n = 0;
    while ((std::size_t(1) << n) < m.rows()) ++n;
    require((std::size_t(1) << n) == m.rows(), "state: density dimension is not a power of 2");
    return QuantumState::mixed(n, std::move(m));
  }
  fail(ErrorKind::Parse, "state: need \"amplitudes\", \"density\", or \"named\"");
}

MeasurementPattern pattern_from_json(const json& j) {
  MeasurementPattern pat;
  require(j.is_object() && j.contains("steps") && j.contains("outputs"),
          "pattern: need {\"steps\", \"outputs\"}");
  for (const auto& s : j.at("steps")) {
    MeasureStep step;
    step.qubit = s.at("qubit").get<std::size_t>();
    const std::string plane = s.value("plane", std::string("XY"));
    if (plane == "XY")
      step.basis.plane = BasisSpec::Plane::XY;
    else if (plane == "Z")
      step.basis.plane = BasisSpec::Plane::Z;
    else
      fail(ErrorKind::Parse, "pattern: unknown plane " + plane);
    step.basis.angle = s.value("angle", 0.0);
    if (s.contains("deps"))
      for (const auto& d : s.at("deps")) step.deps.push_back(d.get<std::size_t>());
    pat.steps.push_back(std::move(step));
  }
  for (const auto& o : j.at("outputs")) pat.output_qubits.push_back(o.get<std::size_t>());
  if (j.contains("byproduct")) {
    for (const auto& r : j.at("byproduct")) {
      ByproductRule rule;
      rule.qubit = r.at("qubit").get<std::size_t>();
      if (r.contains("x_deps"))
        for (const auto& d : r.at("x_deps")) rule.x_deps.push_back(d.get<std::size_t>());
      if (r.contains("z_deps"))
        for (const auto& d : r.at("z_deps")) rule.z_deps.push_back(d.get<std::size_t>());
      pat.byproducts.push_back(std::move(rule));
    }
  }
  return pat;
}

namespace {

std::vector<std::vector<Gate>> gates_from_json(const json& j) {
  std::vector<std::vector<Gate>> out;
  for (const auto& challenge : j) {
    std::vector<Gate> seq;
    for (const auto& g : challenge) {
      Gate gate;
      if (g.contains("matrix")) {
        // Inline rows, or a path to a matrix file.
        const json& mj = g.at("matrix");
        gate.matrix = mj.is_string() ? matrix_from_json(load_json_file(mj.get<std::string>()))
                                     : matrix_from_json(mj);
        gate.name = g.value("gate", std::string("matrix"));
      } else {
        gate.name = g.at("gate").get<std::string>();
      }
      for (const auto& t : g.at("targets")) gate.targets.push_back(t.get<std::size_t>());
      if (g.contains("angle")) gate.angle = g.at("angle").get<double>();
      seq.push_back(std::move(gate));
    }
    out.push_back(std::move(seq));
  }
  return out;
}

}  // namespace

ProtocolInstance protocol_instance_from_json(const json& j) {
  require(j.is_object() && j.contains("system") && j.contains("circuit") &&
              j.contains("params") && j.contains("honest_witness"),
          "instance: need {\"system\", \"circuit\", \"params\", \"honest_witness\"}");
  ConnectedSystem sys = connected_system_from_json(j.at("system"));

  const json& cj = j.at("circuit");
  VerifierCircuit circuit(cj.at("s").get<std::size_t>(), cj.at("m").get<std::size_t>(),
                          cj.value("v", std::size_t(0)), cj.at("output").get<std::size_t>(),
                          gates_from_json(cj.at("gates")));

  const json& pj = j.at("params");
  const double a = pj.at("a").get<double>();
  const double b = pj.at("b").get<double>();
  ProtocolParams params = pj.contains("eps")
                              ? make_params_with_eps(pj.at("eps").get<double>(), a, b)
                              : make_params(pj.at("x_size").get<int>(), a, b);

  std::vector<QuantumState> honest;
  for (const auto& w : j.at("honest_witness")) honest.push_back(state_from_json(w));
  require(honest.size() == circuit.num_challenges(),
          "instance: honest_witness must list one state per challenge");

  std::optional<MbqcSpec> mbqc;
  if (j.contains("mbqc")) mbqc = MbqcSpec{pattern_from_json(j.at("mbqc").at("pattern"))};

  ProtocolInstance inst{std::move(sys), std::move(circuit), params, std::move(honest),
                        std::move(mbqc)};
  inst.default_strategy = j.value("strategy", std::string("honest"));
  return inst;
}

HstabInstance hstab_instance_from_json(const json& j) {
  require(j.is_object() && j.contains("stabilizer") && j.contains("M") && j.contains("a") &&
              j.contains("b"),
          "hstab instance: need {\"stabilizer\", \"M\", \"a\", \"b\"}");
  StabilizerGroup g = stabilizer_from_json(j.at("stabilizer"));
  ObservableElement m = [&] {
    const json& mj = j.at("M");
    if (mj.is_string() && mj.get<std::string>() == "identity")
      return ObservableElement::identity(g.num_qubits());
    return observable_from_json(mj);
  }();
  return make_hstab_instance(std::move(g), std::move(m), j.at("a").get<double>(),
                             j.at("b").get<double>());
}

json params_to_json(const ProtocolParams& p) {
  json j;
  j["a"] = real_json(p.a);
  j["b"] = real_json(p.b);
  j["eps"] = real_json(p.eps);
  j["delta"] = real_json(p.delta);
  j["q"] = real_json(p.q);
  j["alpha"] = real_json(p.alpha);
  j["beta"] = real_json(p.beta);
  j["gap"] = real_json(p.gap);
  if (p.x_size > 0) {
    j["x_size"] = p.x_size;
    j["reference_gap_bound"] = real_json(reference_gap_bound(p.x_size));
    j["gap_dominates_reference"] = p.gap >= reference_gap_bound(p.x_size) - kAlgebraTol;
  }
  return j;
}

json qma_params_to_json(const QmaParams& p) {
  json j;
  j["a"] = real_json(p.a);
  j["b"] = real_json(p.b);
  j["eps"] = real_json(p.eps);
  j["delta"] = real_json(p.delta);
  j["q_star"] = real_json(p.q_star);
  j["alpha"] = real_json(p.alpha);
  j["beta1"] = real_json(p.beta1);
  j["beta2"] = real_json(p.beta2);
  j["gap1"] = real_json(p.delta1);
  j["gap2"] = real_json(p.delta2);
  j["gap_floor"] = real_json((p.a - p.b) * (p.a - p.b) * (p.a - p.b) / 128.0);
  return j;
}

}  // namespace qamsim

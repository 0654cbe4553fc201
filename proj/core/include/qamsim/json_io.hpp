// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include <json.hpp>

#include "qamsim/densesim.hpp"
#include "qamsim/graphstate.hpp"
#include "qamsim/hstab.hpp"
#include "qamsim/mbqc.hpp"
#include "qamsim/pauli.hpp"
#include "qamsim/protocol.hpp"

namespace qamsim {

using json = nlohmann::json;

// Round to 12 significant digits so reports with identical inputs are
// byte-identical across runs.
double canonical_real(double x);
json real_json(double x);

json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

// {"n": int, "generators": ["+XZ", ...]}; rejects i / -i sign prefixes.
StabilizerGroup stabilizer_from_json(const json& j);
json stabilizer_to_json(const StabilizerGroup& g);

// {"n": int, "edges": [[a, b], ...]}
Graph graph_from_json(const json& j);
json graph_to_json(const Graph& g);

// {"graph": {...}, "m": int, "connect": [[v1, v2], ...]}
ConnectedSystem connected_system_from_json(const json& j);
json connected_system_to_json(const ConnectedSystem& sys);

// Array of rows; each entry is [re, im].
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& m);

ObservableElement observable_from_json(const json& j);

// Pure: {"amplitudes": [[re, im], ...]}; mixed: {"density": [[[re, im], ...], ...]};
// or {"named": "plus"|"zero"|"one"|"minus"} for one qubit.
QuantumState state_from_json(const json& j);

// {"steps": [{"qubit": int, "plane": "XY"|"Z", "angle": f, "deps": [...]}, ...],
//  "outputs": [...], "byproduct": [{"qubit": int, "x_deps": [...], "z_deps": [...]}]}
MeasurementPattern pattern_from_json(const json& j);

// {"system": {...}, "circuit": {"s": int, "m": int, "v": int, "output": int,
//  "gates": [[{"gate": name, "targets": [...], "angle"?: f}, ...], ...]},
//  "params": {"x_size": int, "a": f, "b": f} or {"eps": f, "a": f, "b": f},
//  "honest_witness": [<state>, ...], "mbqc"?: {"pattern": {...}}}
ProtocolInstance protocol_instance_from_json(const json& j);

// {"stabilizer": {...}, "M": <matrix>|"identity", "a": f, "b": f}
HstabInstance hstab_instance_from_json(const json& j);

json params_to_json(const ProtocolParams& p);
json qma_params_to_json(const QmaParams& p);

}  // namespace qamsim

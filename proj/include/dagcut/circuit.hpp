// Copyright 2026 The dagcut Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dagcut/dag.hpp"

namespace dagcut {

struct GateOp {
  std::string name;
  std::vector<int> qubits;
  /// Row-major 2^arity x 2^arity; qubits[0] is the most significant bit of
  /// the row/column index.
  std::optional<Eigen::MatrixXcd> matrix;
};

struct Circuit {
  int qubit_count = 0;
  std::vector<GateOp> gates;
};

/// Throws ValidationError on out-of-range or repeated qubit indices, or a
/// matrix whose dimension does not match the gate arity. Unitarity is not
/// checked here.
void validate_circuit(const Circuit& circuit);

/// The dag of a circuit plus the wire bookkeeping simulation needs.
///
/// Vertex ids: inputs 0..n-1, then one gate vertex per gate in program
/// order, then outputs. Edges are created while threading each wire through
/// its gates in program order; leg i of a gate enters and leaves on the
/// same qubit.
struct CircuitDag {
  DagGraph graph;
  std::vector<int> edge_qubit;       // qubit carried by each edge
  std::vector<VertexId> gate_vertex;  // per gate
  std::vector<VertexId> input_of;     // per qubit
  std::vector<VertexId> output_of;    // per qubit
};

CircuitDag trace_circuit(const Circuit& circuit);

inline DagGraph build_dag(const Circuit& circuit) { return trace_circuit(circuit).graph; }

}  // namespace dagcut

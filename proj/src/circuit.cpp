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

#include "dagcut/circuit.hpp"

#include <algorithm>

namespace dagcut {

void validate_circuit(const Circuit& circuit) {
  if (circuit.qubit_count <= 0) throw ValidationError("circuit needs at least one qubit");
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const auto& gate = circuit.gates[i];
    const auto where = "gate " + std::to_string(i) + " ('" + gate.name + "')";
    if (gate.qubits.empty()) throw ValidationError(where + " acts on no qubits");
    for (std::size_t a = 0; a < gate.qubits.size(); ++a) {
      const auto q = gate.qubits[a];
      if (q < 0 || q >= circuit.qubit_count) {
        throw ValidationError(where + " uses qubit " + std::to_string(q) + " out of range");
      }
      for (std::size_t b = 0; b < a; ++b) {
        if (gate.qubits[b] == q) {
          throw ValidationError(where + " repeats qubit " + std::to_string(q));
        }
      }
    }
    if (gate.matrix) {
      const Eigen::Index dim = Eigen::Index{1} << gate.qubits.size();
      if (gate.matrix->rows() != dim || gate.matrix->cols() != dim) {
        throw ValidationError(where + " matrix must be " + std::to_string(dim) + "x" +
                              std::to_string(dim));
      }
    }
  }
}

CircuitDag trace_circuit(const Circuit& circuit) {
  validate_circuit(circuit);
  CircuitDag out;
  const auto n = static_cast<std::size_t>(circuit.qubit_count);
  std::vector<VertexId> frontier(n);
  for (std::size_t q = 0; q < n; ++q) {
    out.input_of.push_back(out.graph.add_vertex(VertexKind::Input, "in:" + std::to_string(q)));
    frontier[q] = out.input_of.back();
  }
  for (const auto& gate : circuit.gates) {
    const auto v = out.graph.add_vertex(VertexKind::Gate, gate.name);
    out.gate_vertex.push_back(v);
    for (auto q : gate.qubits) {
      out.graph.add_edge(frontier[static_cast<std::size_t>(q)], v);
      out.edge_qubit.push_back(q);
      frontier[static_cast<std::size_t>(q)] = v;
    }
  }
  for (std::size_t q = 0; q < n; ++q) {
    out.output_of.push_back(out.graph.add_vertex(VertexKind::Output, "out:" + std::to_string(q)));
  }
  for (std::size_t q = 0; q < n; ++q) {
    out.graph.add_edge(frontier[q], out.output_of[q]);
    out.edge_qubit.push_back(static_cast<int>(q));
  }
  return out;
}

}  // namespace dagcut

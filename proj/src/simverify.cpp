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

#include "dagcut/simverify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>

namespace dagcut {

using namespace std::complex_literals;

namespace {

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

Eigen::MatrixXcd builtin(const std::string& name) {
  const double r = 1.0 / std::sqrt(2.0);
  const auto n = upper(name);
  Eigen::MatrixXcd m;
  if (n == "H") {
    m.resize(2, 2);
    m << r, r, r, -r;
  } else if (n == "X" || n == "Y" || n == "Z" || n == "I") {
    m = pauli_matrix(n[0]);
  } else if (n == "S") {
    m.resize(2, 2);
    m << 1, 0, 0, 1i;
  } else if (n == "T") {
    m.resize(2, 2);
    m << 1, 0, 0, std::polar(1.0, M_PI / 4);
  } else if (n == "CX" || n == "CNOT") {
    m = Eigen::MatrixXcd::Identity(4, 4);
    m.bottomRightCorner(2, 2) = pauli_matrix('X');
  } else if (n == "CZ") {
    m = Eigen::MatrixXcd::Identity(4, 4);
    m(3, 3) = -1;
  } else if (n == "SWAP") {
    m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
  } else {
    throw UnknownGate("unknown gate '" + name + "'");
  }
  return m;
}

}  // namespace

Eigen::MatrixXcd gate_matrix(const GateOp& gate) {
  Eigen::MatrixXcd m = gate.matrix ? *gate.matrix : builtin(gate.name);
  const auto dim = Eigen::Index{1} << gate.qubits.size();
  if (m.rows() != dim || m.cols() != dim) {
    throw ValidationError("gate '" + gate.name + "' has a matrix of the wrong size for " +
                          std::to_string(gate.qubits.size()) + " qubits");
  }
  const double dev = (m.adjoint() * m - Eigen::MatrixXcd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (dev > 1e-10) throw ValidationError("gate '" + gate.name + "' is not unitary");
  return m;
}

void validate_observable(const std::string& obs, int qubits) {
  if (static_cast<int>(obs.size()) != qubits) {
    throw ValidationError("observable '" + obs + "' must have length " + std::to_string(qubits));
  }
  for (char c : obs) {
    if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
      throw ValidationError("observable '" + obs + "' may contain only I, X, Y, Z");
    }
  }
}

double simulate_expectation(const Circuit& circuit, const std::string& obs) {
  validate_circuit(circuit);
  validate_observable(obs, circuit.qubit_count);
  Statevector sv(circuit.qubit_count);
  for (const auto& g : circuit.gates) sv.apply(gate_matrix(g), g.qubits);
  std::vector<Eigen::Matrix2cd> ops;
  for (char c : obs) ops.push_back(pauli_matrix(c));
  return sv.expectation(ops);
}

namespace {

// A fragment lowered to a plain circuit on local qubits.
struct FragmentProgram {
  struct Wire {
    std::optional<EdgeId> prep;  // cut whose preparation starts this wire
  };
  struct Readout {
    std::size_t local = 0;
    std::optional<EdgeId> cut;  // observable placeholder, else original output
    int qubit = 0;
  };
  std::vector<Wire> wires;
  std::vector<std::pair<Eigen::MatrixXcd, std::vector<int>>> gates;
  std::vector<Readout> readouts;
};

FragmentProgram lower_fragment(const CircuitDag& trace, const Circuit& circuit,
                               const CutPlan& plan, std::size_t f) {
  const auto& d = plan.solution.duplicated;
  const auto& frag = plan.fragments.at(f);
  std::vector<char> inside(d.graph.vertex_count(), 0);
  for (auto v : frag.vertices) inside[index_of(v)] = 1;

  std::vector<int> qubit_of(d.graph.edge_count(), -1);
  for (std::size_t e = 0; e < trace.edge_qubit.size(); ++e) qubit_of[e] = trace.edge_qubit[e];
  std::map<VertexId, EdgeId> cut_of_synthetic;
  for (const auto& [e, half] : d.sink_half) qubit_of[index_of(half)] = trace.edge_qubit.at(index_of(e));
  for (const auto& [e, x] : d.synthetic_outputs) cut_of_synthetic[x] = e;
  for (const auto& [e, y] : d.synthetic_inputs) cut_of_synthetic[y] = e;

  FragmentProgram prog;
  std::vector<int> local_on_edge(d.graph.edge_count(), -1);
  for (auto v : frag.vertices) {
    if (d.graph.vertex(v).kind != VertexKind::Input) continue;
    FragmentProgram::Wire w;
    if (!d.is_original(v)) w.prep = cut_of_synthetic.at(v);
    local_on_edge[index_of(d.graph.out_edges(v).front())] = static_cast<int>(prog.wires.size());
    prog.wires.push_back(w);
  }

  auto edge_on = [&](std::span<const EdgeId> edges, int q) {
    for (auto e : edges) {
      if (qubit_of[index_of(e)] == q) return e;
    }
    throw InternalInvariantBroken("gate leg without a matching wire");
  };

  for (std::size_t gi = 0; gi < circuit.gates.size(); ++gi) {
    const auto v = trace.gate_vertex[gi];
    if (!inside[index_of(v)]) continue;
    const auto& gate = circuit.gates[gi];
    std::vector<int> targets;
    for (int q : gate.qubits) {
      const int local = local_on_edge[index_of(edge_on(d.graph.in_edges(v), q))];
      if (local < 0) throw InternalInvariantBroken("gate reached before its wire");
      targets.push_back(local);
    }
    for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
      local_on_edge[index_of(edge_on(d.graph.out_edges(v), gate.qubits[i]))] = targets[i];
    }
    prog.gates.emplace_back(gate_matrix(gate), std::move(targets));
  }

  for (auto v : frag.vertices) {
    if (d.graph.vertex(v).kind != VertexKind::Output) continue;
    const auto e = d.graph.in_edges(v).front();
    FragmentProgram::Readout r;
    r.local = static_cast<std::size_t>(local_on_edge[index_of(e)]);
    r.qubit = qubit_of[index_of(e)];
    if (!d.is_original(v)) r.cut = cut_of_synthetic.at(v);
    prog.readouts.push_back(r);
  }
  return prog;
}

std::size_t bound_term(const std::map<EdgeId, std::size_t>& binding, EdgeId e,
                       const char* what) {
  auto it = binding.find(e);
  if (it == binding.end()) {
    throw UnboundPlaceholder(std::string(what) + " placeholder of edge " +
                             std::to_string(index_of(e)) + " has no bound term");
  }
  if (it->second >= 8) throw ValidationError("term index out of range");
  return it->second;
}

double run_fragment(const FragmentProgram& prog, const std::string& obs,
                    const std::map<EdgeId, std::size_t>& binding) {
  const auto& terms = wire_cut_terms();
  std::vector<Eigen::Vector2cd> init;
  for (const auto& w : prog.wires) {
    init.push_back(w.prep ? terms[bound_term(binding, *w.prep, "prep")].prep_state
                          : Eigen::Vector2cd(1, 0));
  }
  auto sv = Statevector::product(init);
  for (const auto& [u, targets] : prog.gates) sv.apply(u, targets);
  std::vector<Eigen::Matrix2cd> ops(prog.wires.size(), Eigen::Matrix2cd::Identity());
  for (const auto& r : prog.readouts) {
    const char p = r.cut ? terms[bound_term(binding, *r.cut, "obs")].observable
                         : obs.at(static_cast<std::size_t>(r.qubit));
    ops[r.local] = pauli_matrix(p);
  }
  return sv.expectation(ops);
}

}  // namespace

double evaluate_fragment(const Circuit& circuit, const CutPlan& plan, const std::string& obs,
                         const FragmentJob& job) {
  validate_observable(obs, circuit.qubit_count);
  const auto trace = trace_circuit(circuit);
  return run_fragment(lower_fragment(trace, circuit, plan, job.fragment), obs, job.binding);
}

double reconstruct_expectation(const Circuit& circuit, const CutPlan& plan, const std::string& obs) {
  validate_observable(obs, circuit.qubit_count);
  const auto trace = trace_circuit(circuit);
  if (plan.solution.duplicated.original_vertex_count != trace.graph.vertex_count()) {
    throw ValidationError("plan does not belong to this circuit");
  }
  const std::size_t F = plan.fragments.size();
  std::vector<FragmentProgram> progs;
  for (std::size_t f = 0; f < F; ++f) progs.push_back(lower_fragment(trace, circuit, plan, f));

  // Cuts touching each fragment; fragment values are cached per local binding.
  std::vector<std::vector<std::size_t>> touching(F);
  for (std::size_t c = 0; c < plan.cuts.size(); ++c) {
    touching[plan.cuts[c].src_fragment].push_back(c);
    if (plan.cuts[c].dst_fragment != plan.cuts[c].src_fragment) {
      touching[plan.cuts[c].dst_fragment].push_back(c);
    }
  }
  std::vector<std::vector<std::optional<double>>> cache(F);
  for (std::size_t f = 0; f < F; ++f) cache[f].resize(tuple_count(touching[f].size()));

  const auto total = plan.tuple_count();
  std::vector<double> values(total);
  for (std::uint64_t j = 0; j < total; ++j) {
    const auto digits = tuple_digits(j, plan.K);
    double v = tuple_coefficient(j, plan.K);
    for (std::size_t f = 0; f < F && v != 0.0; ++f) {
      std::size_t key = 0;
      for (auto it = touching[f].rbegin(); it != touching[f].rend(); ++it) key = key * 8 + digits[*it];
      auto& slot = cache[f][key];
      if (!slot) {
        std::map<EdgeId, std::size_t> binding;
        for (auto c : touching[f]) binding[plan.cuts[c].edge] = digits[c];
        slot = run_fragment(progs[f], obs, binding);
      }
      v *= *slot;
    }
    values[j] = v;
  }
  // Pairwise reduction keeps the summation order fixed.
  for (std::size_t width = 1; width < values.size(); width *= 2) {
    for (std::size_t i = 0; i + width < values.size(); i += 2 * width) values[i] += values[i + width];
  }
  return values.empty() ? 0.0 : values[0];
}

CrosscheckReport crosscheck(const Circuit& circuit, const CutSet& cuts, const std::string& obs) {
  validate_circuit(circuit);
  if (circuit.qubit_count > kMaxQubits) {
    throw TooManyQubits(std::to_string(circuit.qubit_count) + " qubits exceeds the limit of " +
                        std::to_string(kMaxQubits));
  }
  const auto plan = make_cut_plan(validate_legal(build_dag(circuit)), cuts, 0.1);

  CrosscheckReport r;
  r.direct = simulate_expectation(circuit, obs);
  r.reconstructed = reconstruct_expectation(circuit, plan, obs);
  r.abs_error = std::abs(r.direct - r.reconstructed);
  r.K = plan.K;
  r.tuples = plan.tuple_count();
  r.fragments = plan.fragments.size();
  return r;
}

}  // namespace dagcut

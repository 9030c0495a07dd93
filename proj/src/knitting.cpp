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

#include "dagcut/knitting.hpp"

#include <cmath>
#include <complex>

namespace dagcut {

using namespace std::complex_literals;

Eigen::Matrix2cd pauli_matrix(char p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case 'I':
      m << 1, 0, 0, 1;
      break;
    case 'X':
      m << 0, 1, 1, 0;
      break;
    case 'Y':
      m << 0, -1i, 1i, 0;
      break;
    case 'Z':
      m << 1, 0, 0, -1;
      break;
    default:
      throw ValidationError(std::string("unknown Pauli '") + p + "'");
  }
  return m;
}

namespace {

CutTerm term(double c, char obs, std::string label, std::complex<double> a0,
             std::complex<double> a1) {
  CutTerm t;
  t.coefficient = c;
  t.observable = obs;
  t.prep_label = std::move(label);
  t.prep_state << a0, a1;
  t.prep_density = t.prep_state * t.prep_state.adjoint();
  return t;
}

}  // namespace

const std::array<CutTerm, 8>& wire_cut_terms() {
  static const std::array<CutTerm, 8> table = [] {
    const double r = 1.0 / std::sqrt(2.0);
    return std::array<CutTerm, 8>{
        term(+0.5, 'I', "0", 1, 0),       term(+0.5, 'I', "1", 0, 1),
        term(+0.5, 'X', "+", r, r),       term(-0.5, 'X', "-", r, -r),
        term(+0.5, 'Y', "i", r, 1i * r),  term(-0.5, 'Y', "-i", r, -1i * r),
        term(+0.5, 'Z', "0", 1, 0),       term(-0.5, 'Z', "1", 0, 1),
    };
  }();
  return table;
}

Eigen::Matrix2cd apply_wire_identity(const Eigen::Matrix2cd& A) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (const auto& t : wire_cut_terms()) {
    out += t.coefficient * (A * pauli_matrix(t.observable)).trace() * t.prep_density;
  }
  return out;
}

std::uint64_t tuple_count(std::size_t K) {
  if (K > 21) throw InvariantViolation("8^K overflows 64 bits for K = " + std::to_string(K));
  return std::uint64_t{1} << (3 * K);
}

std::vector<std::size_t> tuple_digits(std::uint64_t j, std::size_t K) {
  std::vector<std::size_t> digits(K);
  for (auto& d : digits) {
    d = static_cast<std::size_t>(j % 8);
    j /= 8;
  }
  return digits;
}

double tuple_coefficient(std::uint64_t j, std::size_t K) {
  double c = 1.0;
  for (auto d : tuple_digits(j, K)) c *= wire_cut_terms()[d].coefficient;
  return c;
}

double overhead_metric(std::size_t K, double epsilon) {
  return std::ldexp(1.0, static_cast<int>(4 * K)) / (epsilon * epsilon);
}

CutPlan make_plan(const GdSolution& sol, double epsilon) {
  if (!(epsilon > 0)) throw InvariantViolation("epsilon must be positive");
  CutPlan plan;
  plan.solution = sol;
  plan.K = sol.cuts.size();
  plan.epsilon = epsilon;
  plan.overhead = overhead_metric(plan.K, epsilon);

  const auto& d = sol.duplicated;
  const auto label = component_labels(d.graph);
  std::vector<std::size_t> fragment_of(d.graph.vertex_count());
  for (std::size_t v = 0; v < fragment_of.size(); ++v) {
    fragment_of[v] = sol.assignment.cluster_of.at(label[v]);
  }

  plan.fragments.resize(sol.assignment.cluster_count);
  for (std::size_t f = 0; f < plan.fragments.size(); ++f) plan.fragments[f].cluster = f;
  std::vector<VertexId> local(d.graph.vertex_count());
  for (const auto& v : d.graph.vertices()) {
    auto& frag = plan.fragments[fragment_of[index_of(v.id)]];
    frag.vertices.push_back(v.id);
    auto name = v.label;
    if (!d.is_original(v.id)) {
      const bool obs = v.kind == VertexKind::Output;
      name = (obs ? "obs:" : "prep:") + v.label.substr(2);
      ++(obs ? frag.observables : frag.preparations);
    }
    if (v.kind == VertexKind::Input) ++frag.qubits;
    local[index_of(v.id)] = frag.graph.add_vertex(v.kind, std::move(name));
  }
  for (const auto& e : d.graph.edges()) {
    auto& frag = plan.fragments[fragment_of[index_of(e.src)]];
    frag.graph.add_edge(local[index_of(e.src)], local[index_of(e.dst)]);
  }

  for (auto e : sol.cuts) {
    const auto x = d.synthetic_outputs.at(e);
    const auto y = d.synthetic_inputs.at(e);
    plan.cuts.push_back({e, fragment_of[index_of(x)], fragment_of[index_of(y)], x, y});
  }
  return plan;
}

CutPlan make_cut_plan(const LegalDag& g, const CutSet& cuts, double epsilon) {
  GdSolution sol;
  sol.cuts = cuts;
  sol.duplicated = duplicate(g, cuts);
  for (const auto& comp : is_acceptable(sol.duplicated).components) {
    if (!comp.has_original_input) {
      throw ValidationError("cut set is rejected: a fragment starts only from preparation inputs");
    }
  }
  sol.assignment = singleton_clusters(sol.duplicated);
  sol.stats = cluster_stats(sol.duplicated, sol.assignment);
  return make_plan(sol, epsilon);
}

}  // namespace dagcut

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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dagcut/gd_enum.hpp"

namespace dagcut {

/// One term c * Tr(A O) rho of the wire identity.
struct CutTerm {
  double coefficient = 0.0;
  char observable = 'I';  // I, X, Y or Z
  std::string prep_label;  // "0", "1", "+", "-", "i", "-i"
  Eigen::Vector2cd prep_state;
  Eigen::Matrix2cd prep_density;
};

/// Pauli matrix for 'I', 'X', 'Y' or 'Z'; throws ValidationError otherwise.
Eigen::Matrix2cd pauli_matrix(char p);

/// The 8 canonical terms in the fixed order I+, I-, X+, X-, Y+, Y-, Z+, Z-.
const std::array<CutTerm, 8>& wire_cut_terms();

/// Sum over the table of c_i Tr(A O_i) rho_i.
Eigen::Matrix2cd apply_wire_identity(const Eigen::Matrix2cd& A);

/// 8^K, exact; throws InvariantViolation when it does not fit 64 bits.
std::uint64_t tuple_count(std::size_t K);

/// Term index per cut for tuple j: digit c is (j / 8^c) % 8.
std::vector<std::size_t> tuple_digits(std::uint64_t j, std::size_t K);

/// Product of the tuple's coefficients.
double tuple_coefficient(std::uint64_t j, std::size_t K);

/// 2^(4K) / epsilon^2.
double overhead_metric(std::size_t K, double epsilon);

struct PlanCut {
  EdgeId edge;
  std::size_t src_fragment = 0;  // holds the observable placeholder
  std::size_t dst_fragment = 0;  // holds the preparation placeholder
  VertexId observable_vertex;    // in the duplicated graph
  VertexId prep_vertex;
};

struct Fragment {
  std::size_t cluster = 0;
  /// Duplicated-graph vertex ids, ascending.
  std::vector<VertexId> vertices;
  /// Fragment subgraph with dense local ids; synthetic vertices relabelled
  /// "obs:<edge>" and "prep:<edge>".
  DagGraph graph;
  std::size_t qubits = 0;  // inputs, counting preparation placeholders
  std::size_t observables = 0;
  std::size_t preparations = 0;
};

struct CutPlan {
  std::vector<PlanCut> cuts;  // ascending edge id; cut c owns tuple digit c
  std::size_t K = 0;
  std::vector<Fragment> fragments;
  GdSolution solution;
  double epsilon = 0.1;
  double overhead = 0.0;

  std::uint64_t tuple_count() const { return dagcut::tuple_count(K); }
};

/// Throws InvariantViolation unless epsilon > 0.
CutPlan make_plan(const GdSolution& sol, double epsilon);

/// Plan for an explicit cut set with one fragment per component. Every
/// fragment must contain an original input (no horizontal cut), otherwise
/// ValidationError. Fragments need not end in an original output, so this
/// gate is weaker than acceptability.
CutPlan make_cut_plan(const LegalDag& g, const CutSet& cuts, double epsilon);

}  // namespace dagcut

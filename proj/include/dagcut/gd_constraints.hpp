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

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dagcut/duplication.hpp"

namespace dagcut {

enum class Backend { Builtin, SmtlibExport };

struct SolverOptions {
  bool connectivity_required = false;
  bool pair_in_out_same_qubit = false;
  std::size_t P_max = 1;
  std::optional<std::size_t> beta_cap;
  Backend backend = Backend::Builtin;
  unsigned threads = 1;
};

/// Vertex-to-partition model with qubit budget Q and exactly P partitions.
///
/// Variable naming: o_<v>_<p> assigns vertex v to partition p, c_<e> marks
/// edge e as cut. Auxiliary variables (reachability r_/q_, acceptability
/// rank a_, connectivity root s_ and distance d_) exist only in the
/// SMT-LIB rendering.
struct ConstraintModel {
  LegalDag graph;
  std::size_t Q = 1;
  std::size_t P = 1;
  SolverOptions opts;
  /// k-th input by id paired with k-th output by id; used by pair-io.
  std::vector<std::pair<VertexId, VertexId>> io_pairs;

  std::string assignment_var(VertexId v, std::size_t p) const;
  std::string cut_var(EdgeId e) const;
};

struct ModelSolution {
  std::vector<std::size_t> partition_of;  // per vertex
  CutSet cuts;
  std::vector<std::size_t> budget_used;  // per partition
};

ConstraintModel build_model(const LegalDag& g, std::size_t Q, std::size_t P,
                            const SolverOptions& opts);

/// Minimum-cut assignment for exactly m.P non-empty partitions, or nullopt.
std::optional<ModelSolution> solve_model(const ConstraintModel& m);

struct PartitionResult {
  std::size_t P_used = 0;
  ModelSolution solution;
};

/// Tries P = 1..P_max and stops at the first feasible one.
std::optional<PartitionResult> iterate_partitions(const LegalDag& g, std::size_t Q,
                                                  const SolverOptions& opts);

/// Best cut count over every P in 1..P_max (ties go to the smaller P).
std::optional<PartitionResult> minimize_over_partitions(const LegalDag& g, std::size_t Q,
                                                        const SolverOptions& opts);

/// Checks an assignment against every model constraint using the
/// duplication module. Returns an empty string when it satisfies them.
std::string check_assignment(const ConstraintModel& m, const std::vector<std::size_t>& partition_of);

/// Cut set, budgets and partition map derived from a raw assignment.
ModelSolution complete_assignment(const ConstraintModel& m,
                                  const std::vector<std::size_t>& partition_of);

/// QF_LIA rendering with 0/1 integer variables and a minimize objective.
std::string emit_smtlib(const ConstraintModel& m);

/// Reads the o_<v>_<p> entries of a `(model ...)` / get-model response.
/// Throws ValidationError if some vertex has no partition or several.
std::vector<std::size_t> parse_smt_model(const ConstraintModel& m, const std::string& text);

}  // namespace dagcut

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
#include <set>
#include <vector>

#include "dagcut/duplication.hpp"

namespace dagcut {

struct GdInstance {
  LegalDag graph;
  std::size_t k = 1;
  std::size_t alpha = 1;
  std::size_t beta = 0;
};

/// Throws InvariantViolation unless k >= 1 and alpha >= 1.
void validate_instance(const GdInstance& inst);

enum class WitnessKind { Decision, Optimal };

struct GdSolution {
  CutSet cuts;
  ClusterAssignment assignment;
  std::vector<ClusterStats> stats;
  WitnessKind witness = WitnessKind::Decision;
  DuplicatedDag duplicated;
};

struct EnumOptions {
  bool prune_io_edges = true;
  /// Use the exact tree search when the underlying graph is a forest.
  bool use_forest_search = true;
  unsigned threads = 1;
};

/// Exact bin packing: groups items into at most alpha bins with load <= k.
/// Bins are numbered by first appearance in item order, so the result is
/// canonical. Returns nullopt when infeasible.
std::optional<ClusterAssignment> pack_components(const std::vector<std::size_t>& sizes,
                                                 std::size_t k, std::size_t alpha);

/// First YES certificate in (size, lexicographic edge id) order, or nullopt.
std::optional<GdSolution> solve_decision(const GdInstance& inst, const EnumOptions& opts = {});

struct MinBetaResult {
  std::size_t min_beta = 0;
  GdSolution solution;
};

std::optional<MinBetaResult> optimize_min_beta(const LegalDag& g, std::size_t k, std::size_t alpha,
                                               std::size_t beta_max, const EnumOptions& opts = {});

/// Independent re-check of a certificate: duplicate, test acceptability,
/// recount clusters. Returns an empty string when valid, otherwise the
/// first problem found.
std::string verify_solution(const GdInstance& inst, const CutSet& cuts,
                            const ClusterAssignment& assignment);

/// Forest search primitives, exposed for testing. `forced_cut` and
/// `forced_uncut` constrain individual edges; the cut count must land in
/// [min_cuts, max_cuts]. Requires is_forest(g.graph()).
struct ForestQuery {
  std::size_t k = 1;
  std::size_t alpha = 1;
  std::size_t min_cuts = 0;
  std::size_t max_cuts = 0;
  std::set<EdgeId> forced_cut;
  std::set<EdgeId> forced_uncut;
};

bool forest_feasible(const LegalDag& g, const ForestQuery& q);

/// Lexicographically first minimum-size feasible cut set with at most
/// max_cuts edges, or nullopt.
std::optional<CutSet> forest_first_cut_set(const LegalDag& g, std::size_t k, std::size_t alpha,
                                           std::size_t max_cuts);

}  // namespace dagcut

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
#include <map>
#include <set>
#include <vector>

#include "dagcut/dag.hpp"

namespace dagcut {

/// Edge ids of a source graph selected for duplication (wire cutting).
using CutSet = std::set<EdgeId>;

/// G with every cut edge (a,b) replaced by (a,x) and (y,b) for fresh x, y.
///
/// Layout: original vertices keep their ids; for each cut edge in ascending
/// id order, x then y are appended (labels "x:<edge>" and "y:<edge>"). The
/// source half (a,x) keeps the cut edge's id; the sink half (y,b) is
/// appended, so every uncut edge keeps its id as well.
struct DuplicatedDag {
  DagGraph graph;
  CutSet cuts;
  std::map<EdgeId, VertexId> synthetic_outputs;  // cut edge -> x
  std::map<EdgeId, VertexId> synthetic_inputs;   // cut edge -> y
  std::map<EdgeId, EdgeId> sink_half;            // cut edge -> id of (y,b)
  std::vector<VertexId> original_inputs;
  std::vector<VertexId> original_outputs;
  std::size_t original_vertex_count = 0;

  bool is_original(VertexId v) const { return index_of(v) < original_vertex_count; }
};

/// Throws UnknownEdgeId if a cut is not an edge of g.
DuplicatedDag duplicate(const LegalDag& g, const CutSet& cuts);

/// Single-edge duplication on an arbitrary graph: (a,b) becomes (a,x) in
/// place plus an appended (y,b). Used to check order independence.
DagGraph duplicate_edge(const DagGraph& g, EdgeId e, const std::string& x_label,
                        const std::string& y_label);

struct ComponentReport {
  std::vector<VertexId> vertices;
  bool has_original_input = false;
  bool has_original_output = false;
  bool acceptable = false;  // holds an original-input -> original-output path
};

struct AcceptabilityReport {
  bool acceptable = true;
  std::vector<ComponentReport> components;
};

/// Every component must contain a directed path from an original input to
/// an original output. Synthetic x/y vertices never count as endpoints.
AcceptabilityReport is_acceptable(const DuplicatedDag& d);

/// True iff e leaves an Input vertex or enters an Output vertex; duplicating
/// such an edge can never be acceptable.
bool duplicated_input_edge_check(const LegalDag& g, EdgeId e);

/// Component index -> cluster index in [0, cluster_count).
struct ClusterAssignment {
  std::vector<std::size_t> cluster_of;
  std::size_t cluster_count = 0;
};

struct ClusterStats {
  std::size_t input_count = 0;
  std::size_t output_count = 0;
  bool acceptable = true;
};

/// Counts include synthetic inputs and outputs. Throws InvariantViolation
/// if the assignment does not cover the components or leaves a cluster
/// empty, and InternalInvariantBroken if some component has |In| != |Out|.
std::vector<ClusterStats> cluster_stats(const DuplicatedDag& d, const ClusterAssignment& a);

/// One cluster per component.
ClusterAssignment singleton_clusters(const DuplicatedDag& d);

}  // namespace dagcut

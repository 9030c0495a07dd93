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

#include "dagcut/duplication.hpp"

#include <algorithm>

namespace dagcut {

DagGraph duplicate_edge(const DagGraph& g, EdgeId cut, const std::string& x_label,
                        const std::string& y_label) {
  if (!g.has_edge(cut)) {
    throw UnknownEdgeId("edge " + std::to_string(index_of(cut)) + " is not in the graph");
  }
  DagGraph out;
  for (const auto& v : g.vertices()) out.add_vertex(v.kind, v.label);
  const auto x = out.add_vertex(VertexKind::Output, x_label);
  const auto y = out.add_vertex(VertexKind::Input, y_label);
  for (const auto& e : g.edges()) {
    if (e.id == cut) {
      out.add_edge(e.src, x);
    } else {
      out.add_edge(e.src, e.dst);
    }
  }
  out.add_edge(y, g.edge(cut).dst);
  return out;
}

DuplicatedDag duplicate(const LegalDag& legal, const CutSet& cuts) {
  const auto& g = legal.graph();
  for (auto e : cuts) {
    if (!g.has_edge(e)) {
      throw UnknownEdgeId("cut edge " + std::to_string(index_of(e)) + " is not in the graph");
    }
  }
  DuplicatedDag d;
  d.cuts = cuts;
  d.original_vertex_count = g.vertex_count();
  d.original_inputs.assign(legal.inputs().begin(), legal.inputs().end());
  d.original_outputs.assign(legal.outputs().begin(), legal.outputs().end());

  for (const auto& v : g.vertices()) d.graph.add_vertex(v.kind, v.label);
  for (auto e : cuts) {
    const auto tag = std::to_string(index_of(e));
    d.synthetic_outputs[e] = d.graph.add_vertex(VertexKind::Output, "x:" + tag);
    d.synthetic_inputs[e] = d.graph.add_vertex(VertexKind::Input, "y:" + tag);
  }
  for (const auto& e : g.edges()) {
    if (cuts.contains(e.id)) {
      d.graph.add_edge(e.src, d.synthetic_outputs.at(e.id));
    } else {
      d.graph.add_edge(e.src, e.dst);
    }
  }
  for (auto e : cuts) {
    d.sink_half[e] = d.graph.add_edge(d.synthetic_inputs.at(e), g.edge(e).dst);
  }
  return d;
}

namespace {

// Vertices reachable from `seeds` following edges forward (or backward).
std::vector<bool> reach(const DagGraph& g, const std::vector<VertexId>& seeds, bool forward) {
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<VertexId> stack;
  for (auto s : seeds) {
    if (!seen[index_of(s)]) {
      seen[index_of(s)] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto e : forward ? g.out_edges(v) : g.in_edges(v)) {
      const auto w = forward ? g.edge(e).dst : g.edge(e).src;
      if (!seen[index_of(w)]) {
        seen[index_of(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

AcceptabilityReport is_acceptable(const DuplicatedDag& d) {
  const auto from_inputs = reach(d.graph, d.original_inputs, true);
  const auto to_outputs = reach(d.graph, d.original_outputs, false);
  AcceptabilityReport report;
  for (auto& members : components(d.graph)) {
    ComponentReport c;
    for (auto v : members) {
      const auto& vertex = d.graph.vertex(v);
      if (d.is_original(v) && vertex.kind == VertexKind::Input) c.has_original_input = true;
      if (d.is_original(v) && vertex.kind == VertexKind::Output) c.has_original_output = true;
      if (from_inputs[index_of(v)] && to_outputs[index_of(v)]) c.acceptable = true;
    }
    c.vertices = std::move(members);
    report.acceptable = report.acceptable && c.acceptable;
    report.components.push_back(std::move(c));
  }
  return report;
}

bool duplicated_input_edge_check(const LegalDag& legal, EdgeId e) {
  const auto& g = legal.graph();
  if (!g.has_edge(e)) throw UnknownEdgeId("edge " + std::to_string(index_of(e)) + " is unknown");
  return g.vertex(g.edge(e).src).kind == VertexKind::Input ||
         g.vertex(g.edge(e).dst).kind == VertexKind::Output;
}

std::vector<ClusterStats> cluster_stats(const DuplicatedDag& d, const ClusterAssignment& a) {
  const auto report = is_acceptable(d);
  const auto& comps = report.components;
  if (a.cluster_of.size() != comps.size()) {
    throw InvariantViolation("cluster assignment covers " + std::to_string(a.cluster_of.size()) +
                             " components, graph has " + std::to_string(comps.size()));
  }
  std::vector<ClusterStats> stats(a.cluster_count);
  std::vector<bool> used(a.cluster_count, false);
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto cluster = a.cluster_of[c];
    if (cluster >= a.cluster_count) {
      throw InvariantViolation("component " + std::to_string(c) + " assigned to cluster " +
                               std::to_string(cluster) + " >= " + std::to_string(a.cluster_count));
    }
    std::size_t ins = 0;
    std::size_t outs = 0;
    for (auto v : comps[c].vertices) {
      const auto kind = d.graph.vertex(v).kind;
      ins += kind == VertexKind::Input;
      outs += kind == VertexKind::Output;
    }
    if (ins != outs) {
      throw InternalInvariantBroken("component " + std::to_string(c) + " has " +
                                    std::to_string(ins) + " inputs but " + std::to_string(outs) +
                                    " outputs");
    }
    used[cluster] = true;
    stats[cluster].input_count += ins;
    stats[cluster].output_count += outs;
    stats[cluster].acceptable = stats[cluster].acceptable && comps[c].acceptable;
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) throw InvariantViolation("cluster " + std::to_string(i) + " is empty");
  }
  return stats;
}

ClusterAssignment singleton_clusters(const DuplicatedDag& d) {
  const auto count = components(d.graph).size();
  ClusterAssignment a;
  a.cluster_count = count;
  a.cluster_of.resize(count);
  for (std::size_t i = 0; i < count; ++i) a.cluster_of[i] = i;
  return a;
}

}  // namespace dagcut

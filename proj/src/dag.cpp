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

#include "dagcut/dag.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <sstream>

namespace dagcut {

std::string to_string(VertexKind kind) {
  switch (kind) {
    case VertexKind::Input:
      return "input";
    case VertexKind::Output:
      return "output";
    case VertexKind::Gate:
      return "gate";
  }
  return "gate";
}

VertexKind vertex_kind_from_string(const std::string& text) {
  if (text == "input") return VertexKind::Input;
  if (text == "output") return VertexKind::Output;
  if (text == "gate") return VertexKind::Gate;
  throw ValidationError("unknown vertex kind '" + text + "'");
}

VertexId DagGraph::add_vertex(VertexKind kind, std::string label) {
  const auto id = vertex_at(vertices_.size());
  vertices_.push_back({id, kind, std::move(label)});
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

EdgeId DagGraph::add_edge(VertexId src, VertexId dst) {
  if (!has_vertex(src) || !has_vertex(dst)) {
    throw ValidationError("edge endpoint refers to an unknown vertex");
  }
  if (src == dst) {
    throw ValidationError("self-loop on vertex " + std::to_string(index_of(src)));
  }
  const auto id = edge_at(edges_.size());
  edges_.push_back({id, src, dst});
  out_[index_of(src)].push_back(id);
  in_[index_of(dst)].push_back(id);
  return id;
}

std::optional<std::vector<VertexId>> DagGraph::topological_order() const {
  std::vector<std::size_t> pending(vertex_count());
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < vertex_count(); ++i) {
    pending[i] = in_[i].size();
    if (pending[i] == 0) ready.push(i);
  }
  std::vector<VertexId> order;
  order.reserve(vertex_count());
  while (!ready.empty()) {
    const auto v = ready.top();
    ready.pop();
    order.push_back(vertex_at(v));
    for (auto e : out_[v]) {
      const auto w = index_of(edges_[index_of(e)].dst);
      if (--pending[w] == 0) ready.push(w);
    }
  }
  if (order.size() != vertex_count()) return std::nullopt;
  return order;
}

std::vector<VertexId> DagGraph::vertices_of_kind(VertexKind kind) const {
  std::vector<VertexId> out;
  for (const auto& v : vertices_) {
    if (v.kind == kind) out.push_back(v.id);
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace

std::vector<std::size_t> component_labels(const DagGraph& g) {
  DisjointSets sets(g.vertex_count());
  for (const auto& e : g.edges()) sets.unite(index_of(e.src), index_of(e.dst));
  // Roots are the smallest member, so first-seen order is smallest-id order.
  std::vector<std::size_t> label(g.vertex_count());
  std::vector<std::size_t> root_label(g.vertex_count(), SIZE_MAX);
  std::size_t next = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto r = sets.find(v);
    if (root_label[r] == SIZE_MAX) root_label[r] = next++;
    label[v] = root_label[r];
  }
  return label;
}

std::vector<std::vector<VertexId>> components(const DagGraph& g) {
  const auto label = component_labels(g);
  std::size_t count = 0;
  for (auto l : label) count = std::max(count, l + 1);
  std::vector<std::vector<VertexId>> out(count);
  for (std::size_t v = 0; v < label.size(); ++v) out[label[v]].push_back(vertex_at(v));
  return out;
}

bool is_forest(const DagGraph& g) {
  DisjointSets sets(g.vertex_count());
  for (const auto& e : g.edges()) {
    if (!sets.unite(index_of(e.src), index_of(e.dst))) return false;
  }
  return true;
}

std::string to_string(LegalityCondition c) {
  switch (c) {
    case LegalityCondition::EmptyEdgeSet:
      return "EmptyEdgeSet";
    case LegalityCondition::Cycle:
      return "CycleDetected";
    case LegalityCondition::InputDegree:
      return "Condition1";
    case LegalityCondition::OutputDegree:
      return "Condition2";
    case LegalityCondition::GateBalance:
      return "Condition3";
    case LegalityCondition::GateTwoRegular:
      return "Condition3'";
  }
  return "Unknown";
}

namespace {

std::string summarize(const std::vector<LegalityViolation>& violations) {
  std::ostringstream os;
  os << "graph is not legal (" << violations.size() << " violation"
     << (violations.size() == 1 ? "" : "s") << ")";
  for (const auto& v : violations) os << "; " << v.message;
  return os.str();
}

}  // namespace

LegalityError::LegalityError(std::vector<LegalityViolation> violations)
    : ValidationError(summarize(violations)), violations_(std::move(violations)) {}

std::string LegalityError::kind() const {
  if (violations_.size() == 1) return to_string(violations_.front().condition);
  return "LegalityError";
}

std::vector<LegalityViolation> legality_violations(const DagGraph& g, bool require_two_legal) {
  std::vector<LegalityViolation> out;
  if (g.edge_count() == 0) {
    out.push_back({std::nullopt, LegalityCondition::EmptyEdgeSet, "edge set is empty"});
  }
  if (!g.topological_order()) {
    out.push_back({std::nullopt, LegalityCondition::Cycle, "graph contains a directed cycle"});
  }
  for (const auto& v : g.vertices()) {
    const auto din = g.in_degree(v.id);
    const auto dout = g.out_degree(v.id);
    const auto where = "vertex " + std::to_string(index_of(v.id)) + " ('" + v.label + "')";
    const auto degrees = " has d_in=" + std::to_string(din) + ", d_out=" + std::to_string(dout);
    switch (v.kind) {
      case VertexKind::Input:
        if (din != 0 || dout != 1) {
          out.push_back({v.id, LegalityCondition::InputDegree,
                         "input " + where + degrees + " (needs 0/1)"});
        }
        break;
      case VertexKind::Output:
        if (din != 1 || dout != 0) {
          out.push_back({v.id, LegalityCondition::OutputDegree,
                         "output " + where + degrees + " (needs 1/0)"});
        }
        break;
      case VertexKind::Gate:
        if (din != dout || din == 0) {
          out.push_back({v.id, LegalityCondition::GateBalance,
                         "gate " + where + degrees + " (needs d_in = d_out > 0)"});
        } else if (require_two_legal && din != 2) {
          out.push_back({v.id, LegalityCondition::GateTwoRegular,
                         "gate " + where + degrees + " (needs 2/2)"});
        }
        break;
    }
  }
  return out;
}

LegalDag validate_legal(DagGraph g, bool require_two_legal) {
  auto violations = legality_violations(g, require_two_legal);
  if (!violations.empty()) throw LegalityError(std::move(violations));

  LegalDag legal;
  legal.inputs_ = g.vertices_of_kind(VertexKind::Input);
  legal.outputs_ = g.vertices_of_kind(VertexKind::Output);
  if (legal.inputs_.size() != legal.outputs_.size()) {
    throw InternalInvariantBroken("legal graph with |In| != |Out|");
  }
  legal.two_legal_ = std::all_of(g.vertices().begin(), g.vertices().end(), [&](const Vertex& v) {
    return v.kind != VertexKind::Gate || g.in_degree(v.id) == 2;
  });
  legal.graph_ = std::move(g);
  return legal;
}

PathDecomposition edge_disjoint_paths(const LegalDag& legal) {
  const auto& g = legal.graph();
  std::vector<std::size_t> consumed(g.vertex_count(), 0);  // out-edges used per vertex
  std::vector<bool> used(g.edge_count(), false);
  PathDecomposition result;
  for (auto start : legal.inputs()) {
    Path path;
    path.vertices.push_back(start);
    auto v = start;
    while (g.vertex(v).kind != VertexKind::Output) {
      const auto outs = g.out_edges(v);
      auto& next = consumed[index_of(v)];
      while (next < outs.size() && used[index_of(outs[next])]) ++next;
      if (next == outs.size()) {
        throw InternalInvariantBroken("path walk dead-ends at vertex " +
                                      std::to_string(index_of(v)));
      }
      const auto e = outs[next++];
      used[index_of(e)] = true;
      path.edges.push_back(e);
      v = g.edge(e).dst;
      path.vertices.push_back(v);
    }
    result.paths.push_back(std::move(path));
  }
  return result;
}

namespace {

// One merge step: returns the rebuilt graph, or nullopt at the fixpoint.
std::optional<DagGraph> merge_first_chain(const DagGraph& g) {
  for (const auto& u : g.vertices()) {
    if (u.kind != VertexKind::Gate || g.out_degree(u.id) == 0) continue;
    const auto outs = g.out_edges(u.id);
    const auto v = g.edge(outs.front()).dst;
    if (g.vertex(v).kind != VertexKind::Gate) continue;
    const bool all_to_v =
        std::all_of(outs.begin(), outs.end(), [&](EdgeId e) { return g.edge(e).dst == v; });
    if (!all_to_v || g.in_degree(v) != outs.size()) continue;

    // Rebuild with v folded into u; surviving ids keep their relative order.
    DagGraph merged;
    std::vector<VertexId> remap(g.vertex_count());
    for (const auto& w : g.vertices()) {
      if (w.id == v) continue;
      auto label = w.id == u.id ? w.label + ";" + g.vertex(v).label : w.label;
      remap[index_of(w.id)] = merged.add_vertex(w.kind, std::move(label));
    }
    remap[index_of(v)] = remap[index_of(u.id)];
    for (const auto& e : g.edges()) {
      if (e.src == u.id && e.dst == v) continue;
      merged.add_edge(remap[index_of(e.src)], remap[index_of(e.dst)]);
    }
    return merged;
  }
  return std::nullopt;
}

}  // namespace

LegalDag consolidate_chains(const LegalDag& legal) {
  DagGraph current = legal.graph();
  while (auto next = merge_first_chain(current)) current = std::move(*next);
  return validate_legal(std::move(current), false);
}

}  // namespace dagcut

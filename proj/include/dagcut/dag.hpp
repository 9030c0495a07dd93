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

// Directed acyclic multistage graphs that model circuits: one Input vertex
// per qubit, one Gate vertex per gate, one Output vertex per measured qubit,
// and one edge per wire segment.
//
// Ids are dense and assigned in creation order. Every iteration in this
// library is id-ascending, so all derived results are deterministic.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dagcut/errors.hpp"

namespace dagcut {

enum class VertexId : std::uint32_t {};
enum class EdgeId : std::uint32_t {};

constexpr std::size_t index_of(VertexId v) { return static_cast<std::size_t>(v); }
constexpr std::size_t index_of(EdgeId e) { return static_cast<std::size_t>(e); }
constexpr VertexId vertex_at(std::size_t i) { return static_cast<VertexId>(i); }
constexpr EdgeId edge_at(std::size_t i) { return static_cast<EdgeId>(i); }

enum class VertexKind { Input, Output, Gate };

std::string to_string(VertexKind kind);
VertexKind vertex_kind_from_string(const std::string& text);

struct Vertex {
  VertexId id;
  VertexKind kind;
  std::string label;
};

struct Edge {
  EdgeId id;
  VertexId src;
  VertexId dst;
};

/// Directed multigraph with typed vertices. Self-loops are rejected on
/// insertion; acyclicity is checked by validate_legal. Parallel edges are
/// allowed, as produced by consecutive two-qubit gates on the same pair.
class DagGraph {
 public:
  VertexId add_vertex(VertexKind kind, std::string label);
  EdgeId add_edge(VertexId src, VertexId dst);

  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  std::span<const Vertex> vertices() const { return vertices_; }
  std::span<const Edge> edges() const { return edges_; }
  const Vertex& vertex(VertexId v) const { return vertices_.at(index_of(v)); }
  const Edge& edge(EdgeId e) const { return edges_.at(index_of(e)); }

  std::span<const EdgeId> out_edges(VertexId v) const { return out_.at(index_of(v)); }
  std::span<const EdgeId> in_edges(VertexId v) const { return in_.at(index_of(v)); }
  std::size_t out_degree(VertexId v) const { return out_edges(v).size(); }
  std::size_t in_degree(VertexId v) const { return in_edges(v).size(); }

  bool has_edge(EdgeId e) const { return index_of(e) < edges_.size(); }
  bool has_vertex(VertexId v) const { return index_of(v) < vertices_.size(); }

  /// Topological order (Kahn, smallest ready id first), or nullopt on a cycle.
  std::optional<std::vector<VertexId>> topological_order() const;

  std::vector<VertexId> vertices_of_kind(VertexKind kind) const;

 private:
  std::vector<Vertex> vertices_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
  std::vector<std::vector<EdgeId>> in_;
};

/// Weakly connected components; each component is sorted ascending and the
/// list is ordered by smallest member id.
std::vector<std::vector<VertexId>> components(const DagGraph& g);

/// Component index per vertex, consistent with components().
std::vector<std::size_t> component_labels(const DagGraph& g);

/// True iff the underlying undirected multigraph has no cycle
/// (parallel edges count as a cycle).
bool is_forest(const DagGraph& g);

enum class LegalityCondition {
  EmptyEdgeSet,
  Cycle,
  InputDegree,     // Condition 1
  OutputDegree,    // Condition 2
  GateBalance,     // Condition 3
  GateTwoRegular,  // Condition 3'
};

std::string to_string(LegalityCondition c);

struct LegalityViolation {
  std::optional<VertexId> vertex;
  LegalityCondition condition;
  std::string message;
};

class LegalityError : public ValidationError {
 public:
  explicit LegalityError(std::vector<LegalityViolation> violations);
  std::string kind() const override;
  const std::vector<LegalityViolation>& violations() const { return violations_; }

 private:
  std::vector<LegalityViolation> violations_;
};

/// A graph proven to satisfy the legality conditions. Only validate_legal
/// constructs one.
class LegalDag {
 public:
  const DagGraph& graph() const { return graph_; }
  std::size_t t() const { return inputs_.size(); }
  bool two_legal() const { return two_legal_; }
  std::span<const VertexId> inputs() const { return inputs_; }
  std::span<const VertexId> outputs() const { return outputs_; }

 private:
  friend LegalDag validate_legal(DagGraph g, bool require_two_legal);
  LegalDag() = default;

  DagGraph graph_;
  std::vector<VertexId> inputs_;
  std::vector<VertexId> outputs_;
  bool two_legal_ = false;
};

/// Checks all legality conditions and reports every violation at once.
/// A Gate vertex of degree zero is reported as a Condition 3 violation: it
/// carries no wire and could never lie on an input-to-output path.
///
/// two_legal() on the result reports whether Condition 3' holds, whether or
/// not it was required.
LegalDag validate_legal(DagGraph g, bool require_two_legal = false);

/// Collects violations without throwing; empty means legal.
std::vector<LegalityViolation> legality_violations(const DagGraph& g, bool require_two_legal);

struct Path {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
};

struct PathDecomposition {
  std::vector<Path> paths;
};

/// t pairwise edge-disjoint Input->Output paths. Walks forward from each
/// input in id order, always taking the lowest-id unconsumed out-edge.
PathDecomposition edge_disjoint_paths(const LegalDag& g);

/// Merges Gate pairs (u, v) where every out-edge of u enters v and v has no
/// other in-edges, until no such pair remains. Labels are joined with ';'.
LegalDag consolidate_chains(const LegalDag& g);

}  // namespace dagcut

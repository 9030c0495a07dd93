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

#include "dagcut/reductions.hpp"

#include <algorithm>
#include <numeric>

namespace dagcut {

void validate_3partition(const ThreePartitionInstance& inst) {
  if (inst.m < 1) throw InvariantViolation("m must be >= 1");
  if (inst.A.size() != 3 * inst.m) {
    throw InvariantViolation("A has " + std::to_string(inst.A.size()) + " elements, expected " +
                             std::to_string(3 * inst.m));
  }
  const auto total = std::accumulate(inst.A.begin(), inst.A.end(), std::size_t{0});
  if (total != inst.m * inst.B) {
    throw InvariantViolation("sum of A is " + std::to_string(total) + ", expected mB = " +
                             std::to_string(inst.m * inst.B));
  }
  for (auto a : inst.A) {
    if (4 * a <= inst.B || 2 * a >= inst.B) {
      throw InvariantViolation("element " + std::to_string(a) + " is not strictly between B/4 and B/2");
    }
  }
}

namespace {

bool find_triples(std::vector<std::size_t>& rest, std::size_t B, std::vector<Triple>& out) {
  if (rest.empty()) return true;
  const auto first = rest.front();
  for (std::size_t i = 1; i < rest.size(); ++i) {
    if (i > 1 && rest[i] == rest[i - 1]) continue;
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      if (j > i + 1 && rest[j] == rest[j - 1]) continue;
      if (first + rest[i] + rest[j] != B) continue;
      std::vector<std::size_t> next;
      for (std::size_t x = 1; x < rest.size(); ++x) {
        if (x != i && x != j) next.push_back(rest[x]);
      }
      out.push_back({first, rest[i], rest[j]});
      if (find_triples(next, B, out)) return true;
      out.pop_back();
    }
  }
  return false;
}

void extend(std::size_t m, std::size_t B, std::size_t lo, std::size_t hi,
            std::vector<std::size_t>& cur, std::size_t sum,
            std::vector<ThreePartitionInstance>& out) {
  if (cur.size() == 3 * m) {
    if (sum == m * B) out.push_back({m, B, cur});
    return;
  }
  const auto from = cur.empty() ? lo : cur.back();
  for (auto a = from; a <= hi; ++a) {
    const auto left = 3 * m - cur.size() - 1;
    if (sum + a + left * a > m * B) break;
    if (sum + a + left * hi < m * B) continue;
    cur.push_back(a);
    extend(m, B, lo, hi, cur, sum + a, out);
    cur.pop_back();
  }
}

}  // namespace

std::optional<std::vector<Triple>> oracle_3partition(const ThreePartitionInstance& inst) {
  validate_3partition(inst);
  std::vector<std::size_t> rest = inst.A;
  std::sort(rest.begin(), rest.end());
  std::vector<Triple> out;
  if (find_triples(rest, inst.B, out)) return out;
  return std::nullopt;
}

std::vector<ThreePartitionInstance> enumerate_3partition(std::size_t m_max, std::size_t B_max) {
  std::vector<ThreePartitionInstance> out;
  for (std::size_t m = 1; m <= m_max; ++m) {
    for (std::size_t B = 1; B <= B_max; ++B) {
      const auto lo = B / 4 + 1;
      const auto hi = (B - 1) / 2;
      if (lo > hi) continue;
      std::vector<std::size_t> cur;
      extend(m, B, lo, hi, cur, 0, out);
    }
  }
  return out;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::G0:
      return "g0";
    case Family::Gbeta:
      return "gbeta";
    case Family::Connected:
      return "connected";
    case Family::TwoLegalized:
      return "two-legal";
  }
  return "g0";
}

Family family_from_string(const std::string& s) {
  if (s == "g0") return Family::G0;
  if (s == "gbeta") return Family::Gbeta;
  if (s == "connected") return Family::Connected;
  if (s == "two-legal") return Family::TwoLegalized;
  throw ValidationError("unknown family '" + s + "'");
}

namespace {

VertexId add_star(DagGraph& g, const std::string& name, std::size_t ins, std::size_t outs) {
  const auto hub = g.add_vertex(VertexKind::Gate, name);
  for (std::size_t j = 0; j < ins; ++j) {
    g.add_edge(g.add_vertex(VertexKind::Input, "in:" + name + "." + std::to_string(j)), hub);
  }
  for (std::size_t j = 0; j < outs; ++j) {
    g.add_edge(hub, g.add_vertex(VertexKind::Output, "out:" + name + "." + std::to_string(j)));
  }
  return hub;
}

void add_g0(DagGraph& g, const ThreePartitionInstance& inst) {
  for (std::size_t i = 0; i < inst.A.size(); ++i) {
    add_star(g, "v" + std::to_string(i + 1), inst.A[i], inst.A[i]);
  }
}

}  // namespace

ReductionArtifact gen_g0(const ThreePartitionInstance& inst) {
  validate_3partition(inst);
  DagGraph g;
  add_g0(g, inst);
  ReductionArtifact a{GdInstance{validate_legal(std::move(g)), inst.B, inst.m, 0},
                      Family::G0, Family::G0, inst, 0, {}, inst.A};
  std::sort(a.expected_component_inputs.begin(), a.expected_component_inputs.end());
  return a;
}

ReductionArtifact gen_gbeta(const ThreePartitionInstance& inst, std::size_t beta) {
  validate_3partition(inst);
  if (beta < 1) throw InvariantViolation("beta must be >= 1 for the gbeta family");
  DagGraph g;
  add_g0(g, inst);
  const auto B = inst.B;
  CutSet expected;
  for (std::size_t c = 0; c < beta; ++c) {
    const auto tag = "g" + std::to_string(c + 1) + ".";
    const auto t1 = g.add_vertex(VertexKind::Gate, tag + "t1");
    const auto t2 = g.add_vertex(VertexKind::Gate, tag + "t2");
    for (std::size_t j = 0; j < B; ++j) {
      g.add_edge(g.add_vertex(VertexKind::Input, "in:" + tag + "a1." + std::to_string(j)), t1);
    }
    for (std::size_t j = 0; j + 1 < B; ++j) {
      g.add_edge(g.add_vertex(VertexKind::Input, "in:" + tag + "a2." + std::to_string(j)), t2);
    }
    expected.insert(g.add_edge(t1, t2));
    for (std::size_t j = 0; j + 1 < B; ++j) {
      g.add_edge(t1, g.add_vertex(VertexKind::Output, "out:" + tag + "b1." + std::to_string(j)));
    }
    for (std::size_t j = 0; j < B; ++j) {
      g.add_edge(t2, g.add_vertex(VertexKind::Output, "out:" + tag + "b2." + std::to_string(j)));
    }
  }
  auto sizes = inst.A;
  sizes.insert(sizes.end(), 2 * beta, B);
  std::sort(sizes.begin(), sizes.end());
  return {GdInstance{validate_legal(std::move(g)), B, inst.m + 2 * beta, beta},
          Family::Gbeta,
          Family::Gbeta,
          inst,
          beta,
          std::move(expected),
          std::move(sizes)};
}

ReductionArtifact gen_connected(const ThreePartitionInstance& inst) {
  validate_3partition(inst);
  const auto leaves = 3 * inst.m;
  const auto B = inst.B;
  DagGraph g;
  CutSet backbone;
  std::vector<std::size_t> sizes;
  std::optional<VertexId> prev;
  for (std::size_t i = 0; i < leaves; ++i) {
    const auto name = "h" + std::to_string(i + 1);
    const auto hub = g.add_vertex(VertexKind::Gate, name);
    const auto ins = inst.A[i] + (i == 0 ? 1 : 0);
    const auto outs = inst.A[i] + (i + 1 == leaves ? 1 : 0);
    for (std::size_t j = 0; j < ins; ++j) {
      g.add_edge(g.add_vertex(VertexKind::Input, "in:" + name + "." + std::to_string(j)), hub);
    }
    if (prev) backbone.insert(g.add_edge(*prev, hub));
    for (std::size_t j = 0; j < outs; ++j) {
      g.add_edge(hub, g.add_vertex(VertexKind::Output, "out:" + name + "." + std::to_string(j)));
    }
    sizes.push_back(inst.A[i] + 1);
    if (i + 1 == leaves) break;
    const auto cname = "c" + std::to_string(i + 1);
    const auto conn = g.add_vertex(VertexKind::Gate, cname);
    backbone.insert(g.add_edge(hub, conn));
    for (std::size_t j = 0; j < B + 2; ++j) {
      g.add_edge(g.add_vertex(VertexKind::Input, "in:" + cname + "." + std::to_string(j)), conn);
    }
    for (std::size_t j = 0; j < B + 2; ++j) {
      g.add_edge(conn, g.add_vertex(VertexKind::Output, "out:" + cname + "." + std::to_string(j)));
    }
    sizes.push_back(B + 3);
    prev = conn;
  }
  std::sort(sizes.begin(), sizes.end());
  return {GdInstance{validate_legal(std::move(g)), B + 3, 4 * inst.m - 1, 6 * inst.m - 2},
          Family::Connected,
          Family::Connected,
          inst,
          0,
          std::move(backbone),
          std::move(sizes)};
}

namespace {

bool is_degree_one_gate(const DagGraph& g, VertexId v) {
  return g.vertex(v).kind == VertexKind::Gate && g.in_degree(v) == 1;
}

}  // namespace

TwoLegalExpansion two_legal_expand_mapped(const LegalDag& legal) {
  const auto& g = legal.graph();

  // Contract degree-1 gates: each maximal run u -> v1 -> ... -> w becomes
  // a single edge u -> w that inherits the id slot of (u, v1).
  DagGraph flat;
  std::vector<VertexId> flat_id(g.vertex_count());
  for (const auto& v : g.vertices()) {
    if (!is_degree_one_gate(g, v.id)) flat_id[index_of(v.id)] = flat.add_vertex(v.kind, v.label);
  }
  std::vector<std::optional<EdgeId>> to_flat(g.edge_count());
  for (const auto& e : g.edges()) {
    if (is_degree_one_gate(g, e.src)) continue;
    auto dst = e.dst;
    while (is_degree_one_gate(g, dst)) dst = g.edge(g.out_edges(dst).front()).dst;
    to_flat[index_of(e.id)] = flat.add_edge(flat_id[index_of(e.src)], flat_id[index_of(dst)]);
  }

  // Expand: slot (vertex, in/out position) -> chain node.
  DagGraph out;
  std::vector<std::vector<VertexId>> chain(flat.vertex_count());
  for (const auto& v : flat.vertices()) {
    const auto d = flat.in_degree(v.id);
    if (v.kind == VertexKind::Gate && d > 2) {
      for (std::size_t j = 1; j < d; ++j) {
        chain[index_of(v.id)].push_back(out.add_vertex(VertexKind::Gate, v.label + "#" + std::to_string(j)));
      }
    } else {
      chain[index_of(v.id)].push_back(out.add_vertex(v.kind, v.label));
    }
  }
  auto position = [](std::span<const EdgeId> edges, EdgeId e) {
    return static_cast<std::size_t>(std::find(edges.begin(), edges.end(), e) - edges.begin()) + 1;
  };
  auto tail_node = [&](const Edge& e) {
    const auto& c = chain[index_of(e.src)];
    if (c.size() == 1) return c.front();
    const auto j = position(flat.out_edges(e.src), e.id);
    return c[std::min(j, c.size()) - 1];
  };
  auto head_node = [&](const Edge& e) {
    const auto& c = chain[index_of(e.dst)];
    if (c.size() == 1) return c.front();
    const auto i = position(flat.in_edges(e.dst), e.id);
    return c[i <= 2 ? 0 : i - 2];
  };
  std::vector<EdgeId> flat_to_out(flat.edge_count());
  for (const auto& e : flat.edges()) flat_to_out[index_of(e.id)] = out.add_edge(tail_node(e), head_node(e));
  for (const auto& c : chain) {
    for (std::size_t j = 0; j + 1 < c.size(); ++j) out.add_edge(c[j], c[j + 1]);
  }

  TwoLegalExpansion result{validate_legal(std::move(out), true), {}};
  for (const auto& f : to_flat) {
    result.edge_map.push_back(f ? std::optional<EdgeId>(flat_to_out[index_of(*f)]) : std::nullopt);
  }
  return result;
}

ReductionArtifact two_legalize(const ReductionArtifact& a) {
  auto expansion = two_legal_expand_mapped(a.instance.graph);
  ReductionArtifact out = a;
  out.instance.graph = std::move(expansion.graph);
  out.family = Family::TwoLegalized;
  out.base_family = a.family == Family::TwoLegalized ? a.base_family : a.family;
  out.expected_cuts.clear();
  for (auto e : a.expected_cuts) {
    if (const auto& mapped = expansion.edge_map[index_of(e)]) out.expected_cuts.insert(*mapped);
  }
  return out;
}

}  // namespace dagcut

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

// Test-only generators and brute-force oracles. Nothing here calls the
// solver code it is used to check.

#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "dagcut/circuit.hpp"
#include "dagcut/dag.hpp"

namespace dagcut::testing {

/// Random circuit with `gates` gates of arity 1..max_arity on distinct
/// random qubits.
inline Circuit random_circuit(std::mt19937& rng, int qubits, int gates, int max_arity = 3) {
  Circuit c;
  c.qubit_count = qubits;
  std::vector<int> order(static_cast<std::size_t>(qubits));
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < gates; ++i) {
    const int hi = std::min(max_arity, qubits);
    const int arity = std::uniform_int_distribution<int>(1, hi)(rng);
    std::shuffle(order.begin(), order.end(), rng);
    c.gates.push_back({"G" + std::to_string(i), {order.begin(), order.begin() + arity}, {}});
  }
  return c;
}

/// Random legal dag with at most max_vertices vertices (and at least one
/// input). The shape is a random circuit, so t equals the qubit count.
inline DagGraph random_legal_dag(std::mt19937& rng, int max_vertices, int max_arity = 3) {
  const int max_t = std::max(1, std::min(6, (max_vertices - 1) / 2));
  const int t = std::uniform_int_distribution<int>(1, max_t)(rng);
  const int gates = std::uniform_int_distribution<int>(0, max_vertices - 2 * t)(rng);
  return build_dag(random_circuit(rng, t, gates, max_arity));
}

/// Graph as plain arrays: vertex kinds, edge endpoints.
struct RawGraph {
  std::vector<VertexKind> kind;
  std::vector<bool> original;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Duplicates `cuts` (a bitmask over edge indices) without the library.
inline RawGraph raw_duplicate(const DagGraph& g, const std::vector<bool>& cut) {
  RawGraph r;
  for (const auto& v : g.vertices()) {
    r.kind.push_back(v.kind);
    r.original.push_back(true);
  }
  for (const auto& e : g.edges()) {
    const auto a = index_of(e.src), b = index_of(e.dst);
    if (cut[index_of(e.id)]) {
      const auto x = r.kind.size();
      r.kind.push_back(VertexKind::Output);
      r.kind.push_back(VertexKind::Input);
      r.original.push_back(false);
      r.original.push_back(false);
      r.edges.push_back({a, x});
      r.edges.push_back({x + 1, b});
    } else {
      r.edges.push_back({a, b});
    }
  }
  return r;
}

/// Component id per vertex by repeated undirected flooding.
inline std::vector<std::size_t> raw_components(const RawGraph& r, std::size_t* count) {
  const auto n = r.kind.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : r.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<std::size_t> comp(n, SIZE_MAX);
  std::size_t c = 0;
  for (std::size_t s = 0; s < n; ++s) {
    if (comp[s] != SIZE_MAX) continue;
    std::vector<std::size_t> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      for (auto w : adj[u]) {
        if (comp[w] == SIZE_MAX) {
          comp[w] = c;
          stack.push_back(w);
        }
      }
    }
    ++c;
  }
  *count = c;
  return comp;
}

/// Per component: does a directed path lead from an original input to an
/// original output? Found by DFS from every original input.
inline std::vector<bool> raw_acceptable(const RawGraph& r, const std::vector<std::size_t>& comp,
                                        std::size_t count) {
  const auto n = r.kind.size();
  std::vector<std::vector<std::size_t>> out(n);
  for (auto [a, b] : r.edges) out[a].push_back(b);
  std::vector<bool> ok(count, false);
  for (std::size_t s = 0; s < n; ++s) {
    if (!r.original[s] || r.kind[s] != VertexKind::Input) continue;
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      if (r.original[u] && r.kind[u] == VertexKind::Output) ok[comp[s]] = true;
      for (auto w : out[u]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
  }
  return ok;
}

/// Can the items be split into at most `bins` groups of sum <= cap? Tries
/// every assignment with bins opened in order.
inline bool brute_pack(const std::vector<std::size_t>& items, std::size_t cap, std::size_t bins) {
  std::vector<std::size_t> load;
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == items.size()) return true;
    for (std::size_t b = 0; b < bins && b <= load.size(); ++b) {
      const bool fresh = b == load.size();
      if (fresh) load.push_back(0);
      if (load[b] + items[i] <= cap) {
        load[b] += items[i];
        if (go(i + 1)) return true;
        load[b] -= items[i];
      }
      if (fresh) {
        load.pop_back();
        break;
      }
    }
    return false;
  };
  return go(0);
}

/// Whether a specific cut mask is a YES certificate for GD(g, k, alpha, *).
inline bool brute_mask_ok(const DagGraph& g, const std::vector<bool>& mask, std::size_t k,
                          std::size_t alpha) {
  const auto r = raw_duplicate(g, mask);
  std::size_t count = 0;
  const auto comp = raw_components(r, &count);
  const auto ok = raw_acceptable(r, comp, count);
  if (std::find(ok.begin(), ok.end(), false) != ok.end()) return false;
  std::vector<std::size_t> inputs(count, 0);
  for (std::size_t v = 0; v < r.kind.size(); ++v) {
    if (r.kind[v] == VertexKind::Input) ++inputs[comp[v]];
  }
  return brute_pack(inputs, k, alpha);
}

/// Minimum number of duplicated edges (<= beta) for GD(g, k, alpha, beta),
/// trying every subset of every edge.
inline std::optional<std::size_t> brute_min_cuts(const DagGraph& g, std::size_t k, std::size_t alpha,
                                                 std::size_t beta) {
  const auto m = g.edge_count();
  for (std::size_t s = 0; s <= std::min(beta, m); ++s) {
    std::vector<bool> mask(m, false);
    std::fill(mask.end() - static_cast<std::ptrdiff_t>(s), mask.end(), true);
    do {
      if (brute_mask_ok(g, mask, k, alpha)) return s;
    } while (std::next_permutation(mask.begin(), mask.end()));
  }
  return std::nullopt;
}

}  // namespace dagcut::testing

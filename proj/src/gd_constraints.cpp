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

#include "dagcut/gd_constraints.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <regex>
#include <sstream>
#include <thread>

namespace dagcut {

std::string ConstraintModel::assignment_var(VertexId v, std::size_t p) const {
  return "o_" + std::to_string(index_of(v)) + "_" + std::to_string(p);
}

std::string ConstraintModel::cut_var(EdgeId e) const { return "c_" + std::to_string(index_of(e)); }

ConstraintModel build_model(const LegalDag& g, std::size_t Q, std::size_t P,
                            const SolverOptions& opts) {
  if (Q < 1) throw InvariantViolation("Q must be >= 1");
  if (P < 1) throw InvariantViolation("P must be >= 1");
  if (opts.P_max < 1) throw InvariantViolation("P_max must be >= 1");
  ConstraintModel m{g, Q, P, opts, {}};
  for (std::size_t i = 0; i < g.t(); ++i) m.io_pairs.emplace_back(g.inputs()[i], g.outputs()[i]);
  return m;
}

// ---------------------------------------------------------------------------
// Builtin branch and bound

namespace {

// Gates are the decision units. An input or output always sits with its
// neighbouring gate. A bare wire
// (input straight into output) forms a unit of its own.
struct UnitLayout {
  std::vector<std::size_t> unit_of;  // per vertex
  std::vector<std::vector<VertexId>> members;
  std::vector<std::size_t> inputs;  // original inputs per unit
  struct Link {
    EdgeId edge;
    std::size_t other;  // earlier unit
    bool enters_self;
  };
  std::vector<std::vector<Link>> links;  // links to earlier units only
};

UnitLayout layout_units(const DagGraph& g) {
  UnitLayout u;
  const auto n = g.vertex_count();
  std::vector<std::size_t> anchor(n);
  for (const auto& v : g.vertices()) {
    auto a = v.id;
    if (v.kind == VertexKind::Input) {
      const auto next = g.edge(g.out_edges(v.id).front()).dst;
      if (g.vertex(next).kind == VertexKind::Gate) a = next;
    } else if (v.kind == VertexKind::Output) {
      const auto prev = g.edge(g.in_edges(v.id).front()).src;
      a = prev;
    }
    anchor[index_of(v.id)] = index_of(a);
  }
  std::vector<std::size_t> id_of_anchor(n, SIZE_MAX);
  u.unit_of.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const auto a = anchor[v];
    if (a != v) continue;
    id_of_anchor[a] = u.members.size();
    u.members.emplace_back();
  }
  u.inputs.assign(u.members.size(), 0);
  for (std::size_t v = 0; v < n; ++v) {
    const auto unit = id_of_anchor[anchor[v]];
    u.unit_of[v] = unit;
    u.members[unit].push_back(vertex_at(v));
    if (g.vertex(vertex_at(v)).kind == VertexKind::Input) ++u.inputs[unit];
  }
  u.links.resize(u.members.size());
  for (const auto& e : g.edges()) {
    const auto a = u.unit_of[index_of(e.src)];
    const auto b = u.unit_of[index_of(e.dst)];
    if (a == b) continue;
    if (a < b) {
      u.links[b].push_back({e.id, a, true});
    } else {
      u.links[a].push_back({e.id, b, false});
    }
  }
  return u;
}

class ModelSearch {
 public:
  ModelSearch(const ConstraintModel& m, const UnitLayout& layout, std::atomic<std::size_t>& bound)
      : m_(m),
        g_(m.graph.graph()),
        u_(layout),
        order_(*g_.topological_order()),
        bound_(bound),
        part_(layout.members.size(), 0),
        loads_(m.P, 0) {}

  // Explores all completions of `prefix` (partition per leading unit).
  void run(const std::vector<std::size_t>& prefix) {
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      if (!assign(i, prefix[i])) return;
      used_ = std::max(used_, prefix[i] + 1);
    }
    dfs(prefix.size());
  }

  const std::optional<std::pair<std::size_t, std::vector<std::size_t>>>& best() const {
    return best_;
  }

 private:
  std::size_t cap() const {
    auto c = bound_.load();
    if (m_.opts.beta_cap) c = std::min(c, *m_.opts.beta_cap + 1);
    return c;
  }

  bool assign(std::size_t i, std::size_t p) {
    part_[i] = p;
    loads_[p] += u_.inputs[i];
    bool ok = loads_[p] <= m_.Q;
    for (const auto& l : u_.links[i]) {
      const auto q = part_[l.other];
      if (q == p) continue;
      ++cuts_;
      auto& load = loads_[l.enters_self ? p : q];
      ok = ++load <= m_.Q && ok;
    }
    return ok && cuts_ < cap();
  }

  void unassign(std::size_t i) {
    const auto p = part_[i];
    loads_[p] -= u_.inputs[i];
    for (const auto& l : u_.links[i]) {
      const auto q = part_[l.other];
      if (q == p) continue;
      --cuts_;
      --loads_[l.enters_self ? p : q];
    }
  }

  void dfs(std::size_t i) {
    const auto units = u_.members.size();
    if (m_.P - std::min(used_, m_.P) > units - i) return;
    if (i == units) {
      if (used_ == m_.P && leaf_ok()) {
        best_ = {cuts_, partition_of()};
        // Strict improvement only, so the first optimum found is kept.
        auto cur = bound_.load();
        while (cuts_ < cur && !bound_.compare_exchange_weak(cur, cuts_)) {
        }
      }
      return;
    }
    const auto limit = std::min(used_ + 1, m_.P);
    for (std::size_t p = 0; p < limit; ++p) {
      const auto saved_used = used_;
      if (assign(i, p)) {
        used_ = std::max(used_, p + 1);
        dfs(i + 1);
      }
      used_ = saved_used;
      unassign(i);
    }
  }

  std::vector<std::size_t> partition_of() const {
    std::vector<std::size_t> out(g_.vertex_count());
    for (std::size_t v = 0; v < out.size(); ++v) out[v] = part_[u_.unit_of[v]];
    return out;
  }

  bool leaf_ok() const {
    const auto part = partition_of();
    const auto n = g_.vertex_count();
    auto uncut = [&](const Edge& e) { return part[index_of(e.src)] == part[index_of(e.dst)]; };

    std::vector<std::size_t> root(n);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    for (const auto& e : g_.edges()) {
      if (!uncut(e)) continue;
      auto a = find(index_of(e.src));
      auto b = find(index_of(e.dst));
      if (a != b) root[std::max(a, b)] = std::min(a, b);
    }
    std::vector<char> rin(n, 0);
    std::vector<char> rout(n, 0);
    for (auto v : order_) {
      char r = g_.vertex(v).kind == VertexKind::Input;
      for (auto e : g_.in_edges(v)) r |= uncut(g_.edge(e)) && rin[index_of(g_.edge(e).src)];
      rin[index_of(v)] = r;
    }
    for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
      char r = g_.vertex(*it).kind == VertexKind::Output;
      for (auto e : g_.out_edges(*it)) r |= uncut(g_.edge(e)) && rout[index_of(g_.edge(e).dst)];
      rout[index_of(*it)] = r;
    }
    std::vector<char> good(n, 0);
    for (std::size_t v = 0; v < n; ++v) good[find(v)] |= rin[v] && rout[v];
    std::vector<std::size_t> pieces(m_.P, 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (find(v) != v) continue;
      if (!good[v]) return false;
      ++pieces[part[v]];
    }
    if (m_.opts.connectivity_required) {
      for (auto c : pieces) {
        if (c != 1) return false;
      }
    }
    if (m_.opts.pair_in_out_same_qubit) {
      std::vector<char> paired(m_.P, 0);
      for (auto [in, out] : m_.io_pairs) {
        if (part[index_of(in)] == part[index_of(out)]) paired[part[index_of(in)]] = 1;
      }
      for (auto p : paired) {
        if (!p) return false;
      }
    }
    return true;
  }

  const ConstraintModel& m_;
  const DagGraph& g_;
  const UnitLayout& u_;
  std::vector<VertexId> order_;
  std::atomic<std::size_t>& bound_;
  std::vector<std::size_t> part_;
  std::vector<std::size_t> loads_;
  std::size_t used_ = 0;
  std::size_t cuts_ = 0;
  std::optional<std::pair<std::size_t, std::vector<std::size_t>>> best_;
};

// Symmetry-reduced prefixes over the first `depth` units.
void prefixes(std::size_t depth, std::size_t P, std::vector<std::size_t>& cur, std::size_t used,
              std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == depth) {
    out.push_back(cur);
    return;
  }
  for (std::size_t p = 0; p < std::min(used + 1, P); ++p) {
    cur.push_back(p);
    prefixes(depth, P, cur, std::max(used, p + 1), out);
    cur.pop_back();
  }
}

}  // namespace

ModelSolution complete_assignment(const ConstraintModel& m,
                                  const std::vector<std::size_t>& partition_of) {
  const auto& g = m.graph.graph();
  ModelSolution s;
  s.partition_of = partition_of;
  s.budget_used.assign(m.P, 0);
  for (auto v : m.graph.inputs()) ++s.budget_used.at(partition_of.at(index_of(v)));
  for (const auto& e : g.edges()) {
    const auto a = partition_of.at(index_of(e.src));
    const auto b = partition_of.at(index_of(e.dst));
    if (a == b) continue;
    s.cuts.insert(e.id);
    ++s.budget_used.at(b);
  }
  return s;
}

std::optional<ModelSolution> solve_model(const ConstraintModel& m) {
  const auto& g = m.graph.graph();
  const auto layout = layout_units(g);
  std::atomic<std::size_t> bound{g.edge_count() + 1};

  std::optional<std::pair<std::size_t, std::vector<std::size_t>>> best;
  const unsigned threads = std::max(1u, m.opts.threads);
  if (threads == 1) {
    ModelSearch search(m, layout, bound);
    search.run({});
    best = search.best();
  } else {
    std::vector<std::vector<std::size_t>> work;
    std::vector<std::size_t> cur;
    std::size_t depth = 0;
    while (depth < layout.members.size() && work.size() < 4 * threads) {
      work.clear();
      prefixes(++depth, m.P, cur, 0, work);
    }
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    std::size_t best_index = SIZE_MAX;
    auto worker = [&] {
      for (std::size_t i = next++; i < work.size(); i = next++) {
        ModelSearch search(m, layout, bound);
        search.run(work[i]);
        if (!search.best()) continue;
        std::lock_guard lock(mu);
        const auto& cand = *search.best();
        if (!best || cand.first < best->first || (cand.first == best->first && i < best_index)) {
          best = cand;
          best_index = i;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (!best) return std::nullopt;
  return complete_assignment(m, best->second);
}

std::optional<PartitionResult> iterate_partitions(const LegalDag& g, std::size_t Q,
                                                  const SolverOptions& opts) {
  for (std::size_t P = 1; P <= opts.P_max; ++P) {
    auto sol = solve_model(build_model(g, Q, P, opts));
    if (sol) return PartitionResult{P, std::move(*sol)};
  }
  return std::nullopt;
}

std::optional<PartitionResult> minimize_over_partitions(const LegalDag& g, std::size_t Q,
                                                        const SolverOptions& opts) {
  std::optional<PartitionResult> best;
  for (std::size_t P = 1; P <= opts.P_max; ++P) {
    auto sol = solve_model(build_model(g, Q, P, opts));
    if (sol && (!best || sol->cuts.size() < best->solution.cuts.size())) {
      best = PartitionResult{P, std::move(*sol)};
    }
  }
  return best;
}

std::string check_assignment(const ConstraintModel& m,
                             const std::vector<std::size_t>& partition_of) {
  const auto& g = m.graph.graph();
  if (partition_of.size() != g.vertex_count()) return "assignment size does not match the graph";
  std::vector<std::size_t> members(m.P, 0);
  for (auto p : partition_of) {
    if (p >= m.P) return "partition index " + std::to_string(p) + " out of range";
    ++members[p];
  }
  for (std::size_t p = 0; p < m.P; ++p) {
    if (members[p] == 0) return "partition " + std::to_string(p) + " is empty";
  }
  const auto sol = complete_assignment(m, partition_of);
  if (m.opts.beta_cap && sol.cuts.size() > *m.opts.beta_cap) return "cut count exceeds beta cap";
  for (std::size_t p = 0; p < m.P; ++p) {
    if (sol.budget_used[p] > m.Q) {
      return "partition " + std::to_string(p) + " uses " + std::to_string(sol.budget_used[p]) +
             " qubits, budget is " + std::to_string(m.Q);
    }
  }

  const auto d = duplicate(m.graph, sol.cuts);
  const auto report = is_acceptable(d);
  std::vector<std::size_t> pieces(m.P, 0);
  std::vector<bool> has_path(m.P, false);
  for (const auto& c : report.components) {
    const auto p = partition_of[index_of(c.vertices.front())];
    ++pieces[p];
    if (!c.acceptable) return "a component of partition " + std::to_string(p) + " is unacceptable";
    has_path[p] = true;
  }
  for (std::size_t p = 0; p < m.P; ++p) {
    if (!has_path[p]) return "partition " + std::to_string(p) + " has no input-to-output path";
    if (m.opts.connectivity_required && pieces[p] != 1) {
      return "partition " + std::to_string(p) + " is not connected";
    }
  }
  if (m.opts.pair_in_out_same_qubit) {
    for (std::size_t p = 0; p < m.P; ++p) {
      const bool ok = std::any_of(m.io_pairs.begin(), m.io_pairs.end(), [&](const auto& io) {
        return partition_of[index_of(io.first)] == p && partition_of[index_of(io.second)] == p;
      });
      if (!ok) return "partition " + std::to_string(p) + " holds no input/output pair";
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// SMT-LIB

namespace {

std::string nary(const char* op, const std::vector<std::string>& xs, const char* empty) {
  if (xs.empty()) return empty;
  if (xs.size() == 1) return xs.front();
  std::string s = std::string("(") + op;
  for (const auto& x : xs) s += " " + x;
  return s + ")";
}

std::string sum(const std::vector<std::string>& xs) { return nary("+", xs, "0"); }
std::string any(const std::vector<std::string>& xs) { return nary("or", xs, "false"); }
std::string all(const std::vector<std::string>& xs) { return nary("and", xs, "true"); }
std::string is1(const std::string& x) { return "(= " + x + " 1)"; }
std::string is0(const std::string& x) { return "(= " + x + " 0)"; }

}  // namespace

std::string emit_smtlib(const ConstraintModel& m) {
  const auto& g = m.graph.graph();
  const auto n = g.vertex_count();
  std::ostringstream os;
  auto vid = [](VertexId v) { return std::to_string(index_of(v)); };
  auto o = [&](VertexId v, std::size_t p) { return m.assignment_var(v, p); };
  auto c = [&](EdgeId e) { return m.cut_var(e); };
  auto r = [&](VertexId v) { return "r_" + vid(v); };
  auto q = [&](VertexId v) { return "q_" + vid(v); };
  auto a = [&](VertexId v) { return "a_" + vid(v); };
  auto s = [&](VertexId v) { return "s_" + vid(v); };
  auto d = [&](VertexId v) { return "d_" + vid(v); };
  auto binary = [&](const std::string& x) {
    os << "(declare-fun " << x << " () Int)\n(assert (and (<= 0 " << x << ") (<= " << x
       << " 1)))\n";
  };
  auto ranged = [&](const std::string& x) {
    os << "(declare-fun " << x << " () Int)\n(assert (and (<= 0 " << x << ") (<= " << x << " "
       << n << ")))\n";
  };
  auto other = [&](EdgeId e, VertexId v) {
    return g.edge(e).src == v ? g.edge(e).dst : g.edge(e).src;
  };

  os << "; dagcut constraint model: " << n << " vertices, " << g.edge_count()
     << " edges, Q=" << m.Q << ", P=" << m.P << "\n";
  os << "; Solvers without optimization: drop the minimize command, assert\n";
  os << "; (<= (+ c_...) K) and binary search on K.\n";
  os << "(set-logic QF_LIA)\n";

  for (const auto& v : g.vertices()) {
    for (std::size_t p = 0; p < m.P; ++p) binary(o(v.id, p));
  }
  for (const auto& e : g.edges()) binary(c(e.id));

  os << "; each vertex in exactly one partition\n";
  for (const auto& v : g.vertices()) {
    std::vector<std::string> xs;
    for (std::size_t p = 0; p < m.P; ++p) xs.push_back(o(v.id, p));
    os << "(assert (= " << sum(xs) << " 1))\n";
  }
  os << "; c_e = 1 iff the endpoints of e differ\n";
  for (const auto& e : g.edges()) {
    std::vector<std::string> same;
    for (std::size_t p = 0; p < m.P; ++p) same.push_back(all({is1(o(e.src, p)), is1(o(e.dst, p))}));
    os << "(assert (= " << c(e.id) << " (ite " << any(same) << " 0 1)))\n";
  }
  os << "; no empty partition\n";
  for (std::size_t p = 0; p < m.P; ++p) {
    std::vector<std::string> xs;
    for (const auto& v : g.vertices()) xs.push_back(o(v.id, p));
    os << "(assert (>= " << sum(xs) << " 1))\n";
  }
  os << "; budget: primary inputs plus entering cut edges\n";
  for (std::size_t p = 0; p < m.P; ++p) {
    std::vector<std::string> xs;
    for (auto v : m.graph.inputs()) xs.push_back(o(v, p));
    for (const auto& e : g.edges()) {
      xs.push_back("(ite " + all({is1(c(e.id)), is1(o(e.dst, p))}) + " 1 0)");
    }
    os << "(assert (<= " << sum(xs) << " " << m.Q << "))\n";
  }

  os << "; r_v: reached from an original input over uncut edges\n";
  os << "; q_v: reaches an original output over uncut edges\n";
  for (const auto& v : g.vertices()) {
    binary(r(v.id));
    binary(q(v.id));
  }
  for (const auto& v : g.vertices()) {
    if (v.kind != VertexKind::Input) {
      std::vector<std::string> why;
      for (auto e : g.in_edges(v.id)) why.push_back(all({is0(c(e)), is1(r(g.edge(e).src))}));
      os << "(assert (=> " << is1(r(v.id)) << " " << any(why) << "))\n";
    }
    if (v.kind != VertexKind::Output) {
      std::vector<std::string> why;
      for (auto e : g.out_edges(v.id)) why.push_back(all({is0(c(e)), is1(q(g.edge(e).dst))}));
      os << "(assert (=> " << is1(q(v.id)) << " " << any(why) << "))\n";
    }
  }
  os << "; every component holds an input-to-output path: a_v strictly\n";
  os << "; decreases along uncut edges towards a vertex with r_v = q_v = 1\n";
  for (const auto& v : g.vertices()) ranged(a(v.id));
  for (const auto& v : g.vertices()) {
    std::vector<std::string> ways{all({is1(r(v.id)), is1(q(v.id))})};
    for (auto e : g.in_edges(v.id)) ways.push_back(all({is0(c(e)), "(< " + a(other(e, v.id)) + " " + a(v.id) + ")"}));
    for (auto e : g.out_edges(v.id)) ways.push_back(all({is0(c(e)), "(< " + a(other(e, v.id)) + " " + a(v.id) + ")"}));
    os << "(assert " << any(ways) << ")\n";
  }
  os << "; path constraint per partition\n";
  for (std::size_t p = 0; p < m.P; ++p) {
    std::vector<std::string> xs;
    for (const auto& v : g.vertices()) xs.push_back(all({is1(o(v.id, p)), is1(r(v.id)), is1(q(v.id))}));
    os << "(assert " << any(xs) << ")\n";
  }

  if (m.opts.connectivity_required) {
    os << "; connectivity scaffold: one root per partition, BFS distances\n";
    for (const auto& v : g.vertices()) {
      binary(s(v.id));
      ranged(d(v.id));
    }
    for (std::size_t p = 0; p < m.P; ++p) {
      std::vector<std::string> xs;
      for (const auto& v : g.vertices()) xs.push_back("(ite " + all({is1(o(v.id, p)), is1(s(v.id))}) + " 1 0)");
      os << "(assert (= " << sum(xs) << " 1))\n";
    }
    for (const auto& v : g.vertices()) {
      os << "(assert (=> " << is1(s(v.id)) << " (= " << d(v.id) << " 0)))\n";
      os << "(assert (=> " << is0(s(v.id)) << " (>= " << d(v.id) << " 1)))\n";
      std::vector<std::string> parent;
      for (auto e : g.in_edges(v.id)) parent.push_back(all({is0(c(e)), "(= " + d(other(e, v.id)) + " (- " + d(v.id) + " 1))"}));
      for (auto e : g.out_edges(v.id)) parent.push_back(all({is0(c(e)), "(= " + d(other(e, v.id)) + " (- " + d(v.id) + " 1))"}));
      os << "(assert (=> " << is0(s(v.id)) << " " << any(parent) << "))\n";
    }
    for (const auto& e : g.edges()) {
      os << "(assert (=> " << is0(c(e.id)) << " (and (<= (- " << d(e.src) << " " << d(e.dst)
         << ") 1) (<= (- " << d(e.dst) << " " << d(e.src) << ") 1))))\n";
    }
  }
  if (m.opts.pair_in_out_same_qubit) {
    os << "; some qubit has both its input and its output in each partition\n";
    for (std::size_t p = 0; p < m.P; ++p) {
      std::vector<std::string> xs;
      for (auto [in, out] : m.io_pairs) xs.push_back(all({is1(o(in, p)), is1(o(out, p))}));
      os << "(assert " << any(xs) << ")\n";
    }
  }
  std::vector<std::string> cuts;
  for (const auto& e : g.edges()) cuts.push_back(c(e.id));
  if (m.opts.beta_cap) os << "(assert (<= " << sum(cuts) << " " << *m.opts.beta_cap << "))\n";
  os << "(minimize " << sum(cuts) << ")\n";
  os << "(check-sat)\n(get-model)\n";
  return os.str();
}

std::vector<std::size_t> parse_smt_model(const ConstraintModel& m, const std::string& text) {
  const auto n = m.graph.graph().vertex_count();
  std::vector<std::size_t> part(n, SIZE_MAX);
  static const std::regex entry(R"(\(define-fun\s+o_(\d+)_(\d+)\s+\(\)\s+Int\s+(\d+)\s*\))");
  for (std::sregex_iterator it(text.begin(), text.end(), entry), end; it != end; ++it) {
    const auto v = std::stoul((*it)[1]);
    const auto p = std::stoul((*it)[2]);
    if (std::stoul((*it)[3]) != 1) continue;
    if (v >= n || p >= m.P) throw ValidationError("model names unknown variable o_" + (*it)[1].str() + "_" + (*it)[2].str());
    if (part[v] != SIZE_MAX) throw ValidationError("vertex " + std::to_string(v) + " assigned twice");
    part[v] = p;
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (part[v] == SIZE_MAX) throw ValidationError("vertex " + std::to_string(v) + " has no partition");
  }
  return part;
}

}  // namespace dagcut

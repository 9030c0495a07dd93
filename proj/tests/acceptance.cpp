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

// Acceptance run. Prints one PASS or FAIL line per criterion, with indented
// detail lines underneath, and exits non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "dagcut/circuit.hpp"
#include "dagcut/gd_constraints.hpp"
#include "dagcut/gd_enum.hpp"
#include "dagcut/knitting.hpp"
#include "dagcut/reductions.hpp"
#include "dagcut/simverify.hpp"
#include "support/oracles.hpp"

namespace dagcut {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& what) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << what << std::endl;
}

void detail(const std::string& text) { std::cout << "    " << text << std::endl; }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<LegalDag> corpus(unsigned seed, int count, int max_vertices) {
  std::mt19937 rng(seed);
  std::vector<LegalDag> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(validate_legal(testing::random_legal_dag(rng, max_vertices)));
  return out;
}

// 1. In/Out balance and t edge-disjoint Input->Output paths.
void legality_suite() {
  const auto start = Clock::now();
  std::mt19937 rng(1001);
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto raw = testing::random_legal_dag(rng, 40);
    if (raw.vertex_count() > 40) ++violations;
    const auto g = validate_legal(raw);
    const auto ins = raw.vertices_of_kind(VertexKind::Input);
    const auto outs = raw.vertices_of_kind(VertexKind::Output);
    if (ins.size() != outs.size() || ins.size() != g.t()) ++violations;
    const auto paths = edge_disjoint_paths(g).paths;
    if (paths.size() != g.t()) ++violations;
    std::set<EdgeId> used;
    std::set<VertexId> starts, ends;
    for (const auto& p : paths) {
      bool ok = !p.edges.empty() && p.vertices.size() == p.edges.size() + 1 &&
                raw.vertex(p.vertices.front()).kind == VertexKind::Input &&
                raw.vertex(p.vertices.back()).kind == VertexKind::Output;
      for (std::size_t j = 0; ok && j < p.edges.size(); ++j) {
        const auto& e = raw.edge(p.edges[j]);
        ok = e.src == p.vertices[j] && e.dst == p.vertices[j + 1] && used.insert(e.id).second;
      }
      if (!ok) ++violations;
      starts.insert(p.vertices.front());
      ends.insert(p.vertices.back());
    }
    if (starts.size() != g.t() || ends.size() != g.t()) ++violations;
  }
  const auto secs = seconds_since(start);
  report(1, violations == 0 && secs < 10.0,
         "1000 random legal dags, " + std::to_string(violations) + " violations, " + fmt("%.2f s", secs));
}

// 2. Single-edge duplication lemmas, checked with the raw oracles.
void duplication_lemmas() {
  const auto start = Clock::now();
  const auto dags = corpus(1001, 1000, 40);
  std::size_t checked = 0;
  int violations = 0;
  for (const auto& g : dags) {
    const auto& graph = g.graph();
    std::size_t before = 0;
    testing::raw_components(testing::raw_duplicate(graph, std::vector<bool>(graph.edge_count(), false)), &before);
    for (const auto& e : graph.edges()) {
      ++checked;
      const auto d = duplicate(g, {e.id});
      std::vector<bool> mask(graph.edge_count(), false);
      mask[index_of(e.id)] = true;
      const auto raw = testing::raw_duplicate(graph, mask);
      std::size_t after = 0;
      const auto comp = testing::raw_components(raw, &after);
      if (after != before && after != before + 1) ++violations;
      if (components(d.graph).size() != after) ++violations;

      const bool io = graph.vertex(e.src).kind == VertexKind::Input || graph.vertex(e.dst).kind == VertexKind::Output;
      if (io) {
        const auto ok = testing::raw_acceptable(raw, comp, after);
        const bool acceptable = std::find(ok.begin(), ok.end(), false) == ok.end();
        if (acceptable || is_acceptable(d).acceptable) ++violations;
      }

      const auto ins = d.graph.vertices_of_kind(VertexKind::Input);
      const auto outs = d.graph.vertices_of_kind(VertexKind::Output);
      if (ins.size() != g.t() + 1 || outs.size() != g.t() + 1) ++violations;
      if (std::find(ins.begin(), ins.end(), d.synthetic_inputs.at(e.id)) == ins.end()) ++violations;
      if (std::find(outs.begin(), outs.end(), d.synthetic_outputs.at(e.id)) == outs.end()) ++violations;
    }
  }
  report(2, violations == 0,
         std::to_string(checked) + " single-edge duplications, " + std::to_string(violations) + " violations, " +
             fmt("%.2f s", seconds_since(start)));
}

// 3. Enumeration solver against the constraint model over a 3x3x3 grid.
void solver_cross_validation() {
  const auto start = Clock::now();
  const auto dags = corpus(3003, 200, 14);
  std::size_t runs = 0, yes = 0, with_cuts = 0, largest = 0;
  int mismatches = 0;
  for (const auto& g : dags) largest = std::max(largest, g.graph().vertex_count());
  for (std::size_t i = 0; i < dags.size(); ++i) {
    const auto& g = dags[i];
    for (std::size_t k : {2, 3, 4}) {
      for (std::size_t alpha : {1, 2, 3}) {
        for (std::size_t beta : {0, 1, 2}) {
          ++runs;
          const auto a = solve_decision({g, k, alpha, beta});
          SolverOptions opts;
          opts.P_max = alpha;
          opts.beta_cap = beta;
          const auto b = minimize_over_partitions(g, k, opts);
          const bool agree = a.has_value() == b.has_value() && (!a || a->cuts.size() == b->solution.cuts.size());
          if (a) ++yes;
          if (a && !a->cuts.empty()) ++with_cuts;
          if (!agree) {
            if (++mismatches <= 5) {
              std::ostringstream os;
              os << "mismatch: dag " << i << " k=" << k << " alpha=" << alpha << " beta=" << beta << " enum="
                 << (a ? std::to_string(a->cuts.size()) : "NO")
                 << " model=" << (b ? std::to_string(b->solution.cuts.size()) : "NO");
              detail(os.str());
            }
          }
        }
      }
    }
  }
  detail("largest dag " + std::to_string(largest) + " vertices, " + std::to_string(with_cuts) +
         " YES cases need at least one cut");
  const auto secs = seconds_since(start);
  report(3, mismatches == 0 && secs < 300.0,
         std::to_string(runs) + " (dag, k, alpha, beta) cases, " + std::to_string(yes) + " YES, " +
             std::to_string(mismatches) + " mismatches, " + fmt("%.1f s", secs));
}

// 4. Reduction families against the 3-partition oracle.
void reductions() {
  const auto start = Clock::now();
  const auto instances = enumerate_3partition(2, 16);
  struct Line {
    std::string name;
    std::size_t total = 0, agree = 0, bad_certificates = 0;
    std::vector<std::string> disagreements;
  };
  std::vector<Line> lines;
  auto line = [&](const std::string& name) -> Line& {
    for (auto& l : lines) {
      if (l.name == name) return l;
    }
    lines.push_back(Line{name, 0, 0, 0, {}});
    return lines.back();
  };
  std::size_t yes_instances = 0;
  for (const auto& inst : instances) {
    const bool truth = oracle_3partition(inst).has_value();
    if (truth) ++yes_instances;
    std::vector<std::pair<std::string, ReductionArtifact>> arts{
        {"g0", gen_g0(inst)}, {"gbeta(1)", gen_gbeta(inst, 1)}, {"gbeta(2)", gen_gbeta(inst, 2)},
        {"connected", gen_connected(inst)}};
    const auto base_count = arts.size();
    for (std::size_t i = 0; i < base_count; ++i) {
      arts.push_back({"two-legal " + arts[i].first, two_legalize(arts[i].second)});
    }
    for (const auto& [name, art] : arts) {
      auto& l = line(name);
      ++l.total;
      const auto sol = solve_decision(art.instance);
      if (sol) {
        std::vector<bool> mask(art.instance.graph.graph().edge_count(), false);
        for (auto e : sol->cuts) mask[index_of(e)] = true;
        if (!verify_solution(art.instance, sol->cuts, sol->assignment).empty() ||
            !testing::brute_mask_ok(art.instance.graph.graph(), mask, art.instance.k, art.instance.alpha) ||
            sol->cuts.size() > art.instance.beta) {
          ++l.bad_certificates;
        }
      }
      if (sol.has_value() == truth) {
        ++l.agree;
      } else {
        std::ostringstream os;
        os << "m=" << inst.m << " B=" << inst.B << " A={";
        for (std::size_t j = 0; j < inst.A.size(); ++j) os << (j ? "," : "") << inst.A[j];
        os << "} oracle=" << (truth ? "YES" : "NO") << " solver=" << (sol ? "YES" : "NO");
        if (sol) os << " with " << sol->cuts.size() << " cuts (certificate verified independently)";
        l.disagreements.push_back(os.str());
      }
    }
  }
  bool all = true;
  for (const auto& l : lines) {
    const bool ok = l.agree == l.total && l.bad_certificates == 0;
    all = all && ok;
    detail(std::string(ok ? "ok   " : "FAIL ") + l.name + ": " + std::to_string(l.agree) + "/" +
           std::to_string(l.total) + " agree, " + std::to_string(l.bad_certificates) + " bad certificates");
    for (const auto& d : l.disagreements) detail("       " + d);
  }
  const auto secs = seconds_since(start);
  report(4, all && secs < 600.0,
         std::to_string(instances.size()) + " instances (" + std::to_string(yes_instances) + " YES) x " +
             std::to_string(lines.size()) + " families, " + fmt("%.1f s", secs));
}

// 5. Wire-cut identity, tuple counts and the overhead metric.
void knitting_identity() {
  std::mt19937 rng(5005);
  std::normal_distribution<double> n(0, 1);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Matrix2cd A;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) A(r, c) = {n(rng), n(rng)};
    }
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto& t : wire_cut_terms()) {
      sum += t.coefficient * (A * pauli_matrix(t.observable)).trace() * (t.prep_state * t.prep_state.adjoint());
    }
    worst = std::max(worst, (sum - A).cwiseAbs().maxCoeff());
  }
  const bool counts = tuple_count(0) == 1 && tuple_count(1) == 8 && tuple_count(2) == 64 && tuple_count(3) == 512;
  const double metric = overhead_metric(1, 0.1);
  const bool metric_ok = std::abs(metric - 1600.0) <= 1e-9;
  detail("max identity error " + fmt("%.2e", worst) + ", overhead(K=1, eps=0.1) = " + fmt("%.10g", metric));
  report(5, worst <= 1e-12 && counts && metric_ok, "8-term identity on 100 random matrices, tuple counts 1/8/64/512");
}

EdgeId edge_between(const CircuitDag& t, int from_gate, int to_gate, int qubit) {
  for (const auto& e : t.graph.edges()) {
    if (e.src == t.gate_vertex[from_gate] && e.dst == t.gate_vertex[to_gate] &&
        t.edge_qubit[index_of(e.id)] == qubit) {
      return e.id;
    }
  }
  throw InvariantViolation("fixture edge missing");
}

// 6. Reconstruction fixtures.
void reconstruction() {
  const auto start = Clock::now();
  const Circuit bell{2, {{"H", {0}, {}}, {"CX", {0, 1}, {}}}};
  const Circuit ghz{3, {{"H", {0}, {}}, {"CX", {0, 1}, {}}, {"CX", {1, 2}, {}}}};
  const auto tb = trace_circuit(bell);
  const auto tg = trace_circuit(ghz);
  const auto g01 = edge_between(tg, 0, 1, 0);
  const auto g12 = edge_between(tg, 1, 2, 1);
  struct Case {
    std::string name;
    const Circuit* circuit;
    CutSet cuts;
    std::string obs;
  };
  const std::vector<Case> cases{
      {"bell 1 cut", &bell, {edge_between(tb, 0, 1, 0)}, "ZZ"},
      {"bell 1 cut", &bell, {edge_between(tb, 0, 1, 0)}, "ZI"},
      {"bell 1 cut", &bell, {edge_between(tb, 0, 1, 0)}, "XX"},
      {"ghz3 1 cut", &ghz, {g12}, "ZZZ"},
      {"ghz3 1 cut", &ghz, {g12}, "XXX"},
      {"ghz3 1 cut", &ghz, {g01}, "ZZZ"},
      {"ghz3 1 cut", &ghz, {g01}, "XXX"},
      {"ghz3 2 cuts", &ghz, {g01, g12}, "ZZZ"},
      {"ghz3 2 cuts", &ghz, {g01, g12}, "XXX"},
  };
  double worst = 0;
  for (const auto& c : cases) {
    const auto r = crosscheck(*c.circuit, c.cuts, c.obs);
    worst = std::max(worst, r.abs_error);
    detail(c.name + " <" + c.obs + ">: direct " + fmt("%+.12f", r.direct) + ", reconstructed " +
           fmt("%+.12f", r.reconstructed) + ", " + std::to_string(r.fragments) + " fragments, " +
           std::to_string(r.tuples) + " tuples");
  }
  const auto secs = seconds_since(start);
  report(6, worst <= 1e-9 && secs < 30.0,
         std::to_string(cases.size()) + " fixtures, max error " + fmt("%.2e", worst) + ", " + fmt("%.3f s", secs));
}

Circuit ladder(int first, int count, Circuit c) {
  c.gates.push_back({"H", {first}, {}});
  for (int q = first; q + 1 < first + count; ++q) c.gates.push_back({"CX", {q, q + 1}, {}});
  return c;
}

// 7. Two-cluster scenarios with at most 4 qubits per cluster.
void scenarios() {
  SolverOptions opts;
  opts.P_max = 2;

  Circuit separable{8, {}};
  separable = ladder(0, 4, separable);
  separable = ladder(4, 4, separable);
  const auto a = minimize_over_partitions(validate_legal(build_dag(separable)), 4, opts);
  const bool a_ok = a && a->P_used == 2 && a->solution.cuts.empty();
  detail(std::string("separable 8 qubits: ") +
         (a ? "P=" + std::to_string(a->P_used) + ", " + std::to_string(a->solution.cuts.size()) + " cuts"
            : "infeasible"));

  // Two 4-qubit blocks sharing qubit 3: CX chains on 0..3 and 3..6.
  const auto bridged = ladder(0, 7, Circuit{7, {}});
  const auto trace = trace_circuit(bridged);
  const auto bridge = edge_between(trace, 3, 4, 3);
  const auto b = minimize_over_partitions(validate_legal(trace.graph), 4, opts);
  const bool b_ok = b && b->solution.cuts == CutSet{bridge};
  detail("blocks sharing one wire, 7 qubits: " +
         (b ? "P=" + std::to_string(b->P_used) + ", " + std::to_string(b->solution.cuts.size()) +
                  " cut(s), on the shared wire: " + (b_ok ? "yes" : "no")
            : std::string("infeasible")));

  Circuit eight{8, {}};
  eight = ladder(0, 4, eight);
  eight = ladder(4, 4, eight);
  eight.gates.push_back({"CX", {3, 4}, {}});
  const auto c = minimize_over_partitions(validate_legal(build_dag(eight)), 4, opts);
  detail(std::string("info: two 4-qubit blocks joined by CX(3,4), 8 qubits: ") +
         (c ? "feasible" : "infeasible (any cut adds a fifth input to a full block)"));

  report(7, a_ok && b_ok, "separable instance needs 0 cuts, shared-wire instance needs exactly the bridging cut");
}

}  // namespace
}  // namespace dagcut

int main() {
  using namespace dagcut;
  try {
    legality_suite();
    duplication_lemmas();
    solver_cross_validation();
    reductions();
    knitting_identity();
    reconstruction();
    scenarios();
  } catch (const std::exception& e) {
    std::cout << "FAIL acceptance run aborted: " << e.what() << std::endl;
    return 1;
  }
  return failures == 0 ? 0 : 1;
}

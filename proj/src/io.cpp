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

#include "dagcut/io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace dagcut::io {

namespace {

template <typename T>
T field(const json& j, const char* key, const char* where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ValidationError(std::string(where) + ": missing field \"" + key + "\"");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string(where) + ": field \"" + key + "\" has the wrong type");
  }
}

json ids(const auto& range) {
  json a = json::array();
  for (auto x : range) a.push_back(index_of(x));
  return a;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

const char* dot_shape(VertexKind k) {
  switch (k) {
    case VertexKind::Input:
      return "invhouse";
    case VertexKind::Output:
      return "house";
    case VertexKind::Gate:
      break;
  }
  return "box";
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << text;
}

json dag_to_json(const DagGraph& g) {
  json vs = json::array();
  for (const auto& v : g.vertices()) {
    vs.push_back({{"id", index_of(v.id)}, {"kind", to_string(v.kind)}, {"label", v.label}});
  }
  json es = json::array();
  for (const auto& e : g.edges()) {
    es.push_back({{"id", index_of(e.id)}, {"src", index_of(e.src)}, {"dst", index_of(e.dst)}});
  }
  return {{"schema", kSchema}, {"vertices", vs}, {"edges", es}};
}

DagGraph dag_from_json(const json& j) {
  const auto vs = field<json>(j, "vertices", "dag");
  const auto es = field<json>(j, "edges", "dag");
  if (!vs.is_array() || !es.is_array()) throw ValidationError("dag: vertices and edges must be arrays");

  std::vector<std::optional<std::pair<VertexKind, std::string>>> vert(vs.size());
  for (const auto& v : vs) {
    const auto id = field<long long>(v, "id", "vertex");
    if (id < 0 || static_cast<std::size_t>(id) >= vs.size() || vert[id]) {
      throw ValidationError("dag: vertex ids must be exactly 0.." + std::to_string(vs.size() - 1));
    }
    const auto kind = vertex_kind_from_string(field<std::string>(v, "kind", "vertex"));
    const auto label = v.contains("label") ? field<std::string>(v, "label", "vertex") : std::to_string(id);
    vert[id] = std::make_pair(kind, label);
  }
  std::vector<std::optional<std::pair<long long, long long>>> edge(es.size());
  for (const auto& e : es) {
    const auto id = field<long long>(e, "id", "edge");
    if (id < 0 || static_cast<std::size_t>(id) >= es.size() || edge[id]) {
      throw ValidationError("dag: edge ids must be exactly 0.." + std::to_string(es.size() - 1));
    }
    const auto src = field<long long>(e, "src", "edge");
    const auto dst = field<long long>(e, "dst", "edge");
    for (auto x : {src, dst}) {
      if (x < 0 || static_cast<std::size_t>(x) >= vs.size()) {
        throw ValidationError("dag: edge " + std::to_string(id) + " references unknown vertex " +
                              std::to_string(x));
      }
    }
    edge[id] = std::make_pair(src, dst);
  }
  DagGraph g;
  for (const auto& v : vert) g.add_vertex(v->first, v->second);
  for (const auto& e : edge) {
    if (e->first == e->second) throw ValidationError("dag: self-loop on vertex " + std::to_string(e->first));
    g.add_edge(vertex_at(e->first), vertex_at(e->second));
  }
  return g;
}

json circuit_to_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates) {
    json o = {{"name", g.name}, {"qubits", g.qubits}};
    if (g.matrix) {
      json m = json::array();
      for (Eigen::Index r = 0; r < g.matrix->rows(); ++r) {
        for (Eigen::Index k = 0; k < g.matrix->cols(); ++k) {
          m.push_back({(*g.matrix)(r, k).real(), (*g.matrix)(r, k).imag()});
        }
      }
      o["matrix"] = m;
    }
    gates.push_back(o);
  }
  return {{"schema", kSchema}, {"qubits", c.qubit_count}, {"gates", gates}};
}

Circuit circuit_from_json(const json& j) {
  Circuit c;
  c.qubit_count = field<int>(j, "qubits", "circuit");
  for (const auto& g : field<json>(j, "gates", "circuit")) {
    GateOp op;
    op.name = field<std::string>(g, "name", "gate");
    op.qubits = field<std::vector<int>>(g, "qubits", "gate");
    if (g.contains("matrix")) {
      std::vector<std::complex<double>> flat;
      auto take = [&](const json& pair) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
          throw ValidationError("gate '" + op.name + "': matrix entries must be [re, im]");
        }
        flat.emplace_back(pair[0].get<double>(), pair[1].get<double>());
      };
      for (const auto& x : g.at("matrix")) {
        if (x.is_array() && !x.empty() && x[0].is_array()) {
          for (const auto& y : x) take(y);
        } else {
          take(x);
        }
      }
      const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(flat.size()))));
      if (n * n != static_cast<Eigen::Index>(flat.size())) {
        throw ValidationError("gate '" + op.name + "': matrix is not square");
      }
      Eigen::MatrixXcd m(n, n);
      for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index k = 0; k < n; ++k) m(r, k) = flat[static_cast<std::size_t>(r * n + k)];
      }
      op.matrix = m;
    }
    c.gates.push_back(std::move(op));
  }
  validate_circuit(c);
  return c;
}

json duplicated_to_json(const DuplicatedDag& d) {
  auto j = dag_to_json(d.graph);
  for (auto& v : j["vertices"]) v["synthetic"] = !d.is_original(vertex_at(v["id"].get<std::size_t>()));
  json cuts = json::array();
  for (auto e : d.cuts) {
    cuts.push_back({{"edge", index_of(e)},
                    {"x", index_of(d.synthetic_outputs.at(e))},
                    {"y", index_of(d.synthetic_inputs.at(e))},
                    {"sink_edge", index_of(d.sink_half.at(e))}});
  }
  j["cuts"] = cuts;
  return j;
}

json legality_report(const DagGraph& g, bool require_two_legal) {
  const auto violations = legality_violations(g, require_two_legal);
  json vs = json::array();
  for (const auto& v : violations) {
    json o = {{"condition", to_string(v.condition)}, {"message", v.message}};
    if (v.vertex) o["vertex"] = index_of(*v.vertex);
    vs.push_back(o);
  }
  json j = {{"schema", kSchema}, {"legal", violations.empty()}};
  if (violations.empty()) {
    const auto legal = validate_legal(g);
    j["t"] = legal.t();
    j["two_legal"] = legal.two_legal();
    j["vertices"] = g.vertex_count();
    j["edges"] = g.edge_count();
  }
  j["violations"] = vs;
  return j;
}

json paths_to_json(const PathDecomposition& p) {
  json paths = json::array();
  for (const auto& path : p.paths) paths.push_back({{"vertices", ids(path.vertices)}, {"edges", ids(path.edges)}});
  return {{"schema", kSchema}, {"count", p.paths.size()}, {"paths", paths}};
}

json solution_to_json(const GdInstance& inst, const GdSolution& sol) {
  const auto comps = components(sol.duplicated.graph);
  json clusters = json::array();
  for (std::size_t c = 0; c < sol.assignment.cluster_count; ++c) {
    json members = json::array();
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (sol.assignment.cluster_of[i] != c) continue;
      for (auto v : comps[i]) members.push_back(index_of(v));
    }
    std::sort(members.begin(), members.end());
    clusters.push_back({{"vertices", members},
                        {"inputs", sol.stats.at(c).input_count},
                        {"outputs", sol.stats.at(c).output_count},
                        {"acceptable", sol.stats.at(c).acceptable}});
  }
  return {{"schema", kSchema},
          {"answer", "yes"},
          {"k", inst.k},
          {"alpha", inst.alpha},
          {"beta", inst.beta},
          {"witness", sol.witness == WitnessKind::Optimal ? "optimal" : "decision"},
          {"cuts", ids(sol.cuts)},
          {"clusters", clusters},
          {"duplicated", duplicated_to_json(sol.duplicated)}};
}

json artifact_to_json(const ReductionArtifact& a) {
  json prov = {{"family", to_string(a.family)},
               {"base_family", to_string(a.base_family)},
               {"m", a.source.m},
               {"B", a.source.B},
               {"A", a.source.A}};
  if (a.base_family == Family::Gbeta) prov["beta_param"] = a.beta_param;
  prov["expected_cuts"] = ids(a.expected_cuts);
  prov["expected_component_inputs"] = a.expected_component_inputs;
  return {{"schema", kSchema},
          {"graph", dag_to_json(a.instance.graph.graph())},
          {"k", a.instance.k},
          {"alpha", a.instance.alpha},
          {"beta", a.instance.beta},
          {"provenance", prov}};
}

json model_solution_to_json(const ConstraintModel& m, const PartitionResult& r) {
  json parts = json::array();
  for (std::size_t p = 0; p < r.P_used; ++p) {
    json members = json::array();
    for (std::size_t v = 0; v < r.solution.partition_of.size(); ++v) {
      if (r.solution.partition_of[v] == p) members.push_back(v);
    }
    parts.push_back({{"vertices", members}, {"budget", r.solution.budget_used.at(p)}});
  }
  return {{"schema", kSchema},
          {"answer", "yes"},
          {"Q", m.Q},
          {"P", r.P_used},
          {"cut_count", r.solution.cuts.size()},
          {"cuts", ids(r.solution.cuts)},
          {"partitions", parts}};
}

json plan_to_json(const CutPlan& plan) {
  json cuts = json::array();
  for (const auto& c : plan.cuts) {
    cuts.push_back({{"edge", index_of(c.edge)}, {"src_frag", c.src_fragment}, {"dst_frag", c.dst_fragment}});
  }
  json terms = json::array();
  std::size_t i = 0;
  for (const auto& t : wire_cut_terms()) {
    terms.push_back({{"index", i++},
                     {"coefficient", t.coefficient},
                     {"observable", std::string(1, t.observable)},
                     {"prep", t.prep_label}});
  }
  json frags = json::array();
  for (const auto& f : plan.fragments) {
    frags.push_back({{"index", f.cluster},
                     {"qubits", f.qubits},
                     {"observables", f.observables},
                     {"preparations", f.preparations},
                     {"vertices", ids(f.vertices)}});
  }
  return {{"schema", kSchema},
          {"cuts", cuts},
          {"K", plan.K},
          {"tuple_count", plan.tuple_count()},
          {"terms", terms},
          {"overhead", {{"epsilon", plan.epsilon}, {"metric", plan.overhead}}},
          {"fragments", frags}};
}

std::string plan_table(const CutPlan& plan) {
  std::ostringstream os;
  os << "fragment  qubits  obs  prep  vertices\n";
  for (const auto& f : plan.fragments) {
    os << std::setw(8) << f.cluster << std::setw(8) << f.qubits << std::setw(5) << f.observables
       << std::setw(6) << f.preparations << std::setw(10) << f.vertices.size() << "\n";
  }
  os << "K = " << plan.K << ", tuples = " << plan.tuple_count() << ", epsilon = " << plan.epsilon
     << ", overhead metric = " << plan.overhead << "\n";
  return os.str();
}

json crosscheck_to_json(const CrosscheckReport& r, double tolerance) {
  return {{"schema", kSchema},
          {"direct", r.direct},
          {"reconstructed", r.reconstructed},
          {"abs_error", r.abs_error},
          {"tolerance", tolerance},
          {"ok", r.abs_error <= tolerance},
          {"K", r.K},
          {"tuples", r.tuples},
          {"fragments", r.fragments}};
}

std::string to_dot(const DagGraph& g, const std::string& name, const CutSet& cuts) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  rankdir=LR;\n";
  for (const auto& v : g.vertices()) {
    os << "  v" << index_of(v.id) << " [label=\"" << dot_escape(v.label) << "\", shape=" << dot_shape(v.kind)
       << "];\n";
  }
  for (const auto& e : g.edges()) {
    os << "  v" << index_of(e.src) << " -> v" << index_of(e.dst) << " [label=\"e" << index_of(e.id) << "\"";
    if (cuts.count(e.id)) os << ", style=dashed, color=red";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string plan_to_dot(const CutPlan& plan) {
  std::ostringstream os;
  os << "digraph plan {\n  rankdir=LR;\n";
  for (const auto& f : plan.fragments) {
    os << "  subgraph cluster_" << f.cluster << " {\n    label=\"fragment " << f.cluster << " ("
       << f.qubits << " qubits)\";\n";
    for (const auto& v : f.graph.vertices()) {
      os << "    f" << f.cluster << "_" << index_of(v.id) << " [label=\"" << dot_escape(v.label)
         << "\", shape=" << dot_shape(v.kind) << "];\n";
    }
    for (const auto& e : f.graph.edges()) {
      os << "    f" << f.cluster << "_" << index_of(e.src) << " -> f" << f.cluster << "_" << index_of(e.dst)
         << ";\n";
    }
    os << "  }\n";
  }
  // Dotted links connect each observable placeholder to its preparation.
  for (const auto& c : plan.cuts) {
    auto local = [&](std::size_t frag, VertexId v) {
      const auto& vs = plan.fragments[frag].vertices;
      return std::lower_bound(vs.begin(), vs.end(), v) - vs.begin();
    };
    os << "  f" << c.src_fragment << "_" << local(c.src_fragment, c.observable_vertex) << " -> f"
       << c.dst_fragment << "_" << local(c.dst_fragment, c.prep_vertex) << " [style=dotted, label=\"e"
       << index_of(c.edge) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

CutSet parse_cut_list(const std::string& text) {
  CutSet cuts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (!std::isdigit(static_cast<unsigned char>(item.front()))) {
      throw ValidationError("'" + item + "' is not an edge id");
    }
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size()) throw ValidationError("'" + item + "' is not an edge id");
    cuts.insert(edge_at(v));
  }
  return cuts;
}

}  // namespace dagcut::io

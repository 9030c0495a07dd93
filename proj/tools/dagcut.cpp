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

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "dagcut/io.hpp"

namespace {

using namespace dagcut;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitNo = 3;

struct Common {
  std::string graph;
  std::string output;
  unsigned threads = 1;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_text_file(path, text);
  }
}

void emit_json(const std::string& path, const json& j) { emit(path, j.dump(2) + "\n"); }

void report_error(const std::string& kind, const std::string& message) {
  std::cerr << json{{"schema", io::kSchema}, {"error", kind}, {"message", message}}.dump() << "\n";
}

// Graph files may hold a bare dag, a generated instance or a circuit.
struct LoadedGraph {
  DagGraph graph;
  std::optional<std::size_t> k, alpha, beta;
};

LoadedGraph load_graph(const std::string& path) {
  const auto j = io::read_json_file(path);
  LoadedGraph out;
  if (j.contains("gates")) {
    out.graph = build_dag(io::circuit_from_json(j));
  } else if (j.contains("graph")) {
    out.graph = io::dag_from_json(j.at("graph"));
    for (auto [key, slot] : {std::pair{"k", &out.k}, {"alpha", &out.alpha}, {"beta", &out.beta}}) {
      if (j.contains(key) && j.at(key).is_number_unsigned()) *slot = j.at(key).get<std::size_t>();
    }
  } else {
    out.graph = io::dag_from_json(j);
  }
  return out;
}

std::size_t pick(const std::optional<std::size_t>& flag, const std::optional<std::size_t>& file,
                 const char* name) {
  if (flag) return *flag;
  if (file) return *file;
  throw ValidationError(std::string("missing parameter ") + name);
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    long long v = -1;
    try {
      v = std::stoll(item, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != item.size() || v <= 0) throw ValidationError("'" + item + "' is not a positive integer");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string with_suffix(const std::string& path, std::size_t p) {
  std::filesystem::path fp(path);
  auto stem = fp.stem().string() + ".p" + std::to_string(p) + fp.extension().string();
  return (fp.parent_path() / stem).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dagcut: wire-cut placement on legal circuit dags"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file of defaults; flags given on the command line win");
  Common common;
  app.add_option("--threads", common.threads, "worker threads for the solvers")->capture_default_str();

  int exit_code = kExitOk;

  // validate
  auto* validate = app.add_subcommand("validate", "check the legality conditions of a dag");
  bool two_legal = false;
  validate->add_option("--graph", common.graph, "dag, instance or circuit JSON")->required();
  validate->add_flag("--two-legal", two_legal, "also require every gate to have two inputs and two outputs");
  validate->add_option("-o,--output", common.output, "output path (default stdout)");
  validate->callback([&] {
    const auto g = load_graph(common.graph);
    const auto report = io::legality_report(g.graph, two_legal);
    emit_json(common.output, report);
    if (!report["legal"].get<bool>()) exit_code = kExitInvalid;
  });

  // solve
  auto* solve = app.add_subcommand(
      "solve",
      "decide GD(G,k,alpha,beta) exactly. Candidate cut sets are enumerated by size; when the cut graph "
      "has many components they are grouped into clusters by exact bin packing, whose worst case is "
      "exponential");
  std::optional<std::size_t> k, alpha, beta;
  bool optimize = false, no_prune = false;
  solve->add_option("--graph", common.graph, "dag, instance or circuit JSON")->required();
  solve->add_option("-k", k, "maximum inputs (and outputs) per cluster");
  solve->add_option("--alpha", alpha, "maximum number of clusters");
  solve->add_option("--beta", beta, "maximum number of duplicated edges");
  solve->add_flag("--optimize", optimize, "report the minimum beta up to --beta");
  solve->add_flag("--no-prune", no_prune, "also enumerate input and output edges");
  solve->add_option("-o,--output", common.output, "output path (default stdout)");
  solve->callback([&] {
    const auto g = load_graph(common.graph);
    GdInstance inst{validate_legal(g.graph), pick(k, g.k, "-k"), pick(alpha, g.alpha, "--alpha"),
                    pick(beta, g.beta, "--beta")};
    validate_instance(inst);
    EnumOptions opts;
    opts.prune_io_edges = !no_prune;
    opts.threads = common.threads;
    std::optional<GdSolution> sol;
    std::optional<std::size_t> min_beta;
    if (optimize) {
      if (auto r = optimize_min_beta(inst.graph, inst.k, inst.alpha, inst.beta, opts)) {
        min_beta = r->min_beta;
        sol = std::move(r->solution);
      }
    } else {
      sol = solve_decision(inst, opts);
    }
    if (!sol) {
      emit_json(common.output, {{"schema", io::kSchema}, {"answer", "no"}});
      exit_code = kExitNo;
      return;
    }
    auto j = io::solution_to_json(inst, *sol);
    if (min_beta) j["min_beta"] = *min_beta;
    emit_json(common.output, j);
  });

  // knit-opt
  auto* knit = app.add_subcommand("knit-opt", "minimum wire cuts under a per-partition qubit budget");
  std::size_t Q = 1, pmax = 1;
  bool connected = false, pair_io = false, first_p = false;
  std::string backend = "builtin", emit_path;
  knit->add_option("--graph", common.graph, "dag or circuit JSON")->required();
  knit->add_option("-Q", Q, "qubit budget per partition")->required();
  knit->add_option("--pmax", pmax, "maximum number of partitions")->capture_default_str();
  knit->add_flag("--connected", connected, "each partition must be weakly connected");
  knit->add_flag("--pair-io", pair_io, "the k-th input and k-th output share a partition");
  knit->add_flag("--first-feasible", first_p, "stop at the smallest feasible partition count");
  knit->add_option("--backend", backend, "builtin or smtlib")
      ->check(CLI::IsMember({"builtin", "smtlib"}))
      ->capture_default_str();
  knit->add_option("--emit", emit_path, "write the SMT-LIB model here");
  knit->add_option("-o,--output", common.output, "output path (default stdout)");
  knit->callback([&] {
    const auto legal = validate_legal(load_graph(common.graph).graph);
    SolverOptions opts;
    opts.connectivity_required = connected;
    opts.pair_in_out_same_qubit = pair_io;
    opts.P_max = pmax;
    opts.threads = common.threads;
    opts.backend = backend == "smtlib" ? Backend::SmtlibExport : Backend::Builtin;
    if (opts.backend == Backend::SmtlibExport) {
      if (emit_path.empty()) throw ValidationError("--backend smtlib needs --emit");
      json files = json::array();
      for (std::size_t p = 1; p <= pmax; ++p) {
        const auto path = pmax == 1 ? emit_path : with_suffix(emit_path, p);
        io::write_text_file(path, emit_smtlib(build_model(legal, Q, p, opts)));
        files.push_back({{"P", p}, {"path", path}});
      }
      emit_json(common.output, {{"schema", io::kSchema}, {"backend", "smtlib"}, {"models", files}});
      return;
    }
    const auto r = first_p ? iterate_partitions(legal, Q, opts) : minimize_over_partitions(legal, Q, opts);
    if (!r) {
      emit_json(common.output, {{"schema", io::kSchema}, {"answer", "no"}});
      exit_code = kExitNo;
      return;
    }
    const auto model = build_model(legal, Q, r->P_used, opts);
    if (!emit_path.empty()) io::write_text_file(emit_path, emit_smtlib(model));
    emit_json(common.output, io::model_solution_to_json(model, *r));
  });

  // gen
  auto* gen = app.add_subcommand("gen", "generate a reduction instance from a 3-partition instance");
  std::string family = "g0", a_list;
  std::size_t B = 0, gen_beta = 1;
  bool gen_two_legal = false;
  gen->add_option("--family", family, "g0, gbeta or connected")
      ->check(CLI::IsMember({"g0", "gbeta", "connected"}))
      ->capture_default_str();
  gen->add_option("--a", a_list, "comma-separated multiset A")->required();
  gen->add_option("--B", B, "target triple sum")->required();
  gen->add_option("--beta", gen_beta, "gadget copies for gbeta")->capture_default_str();
  gen->add_flag("--two-legal", gen_two_legal, "expand gates into two-in/two-out chains");
  gen->add_option("-o,--output", common.output, "output path (default stdout)");
  gen->callback([&] {
    ThreePartitionInstance inst;
    inst.A = parse_sizes(a_list);
    inst.B = B;
    inst.m = inst.A.size() / 3;
    if (inst.A.size() % 3 != 0 || inst.m == 0) throw InvariantViolation("|A| must be a positive multiple of 3");
    validate_3partition(inst);
    auto art = family == "g0" ? gen_g0(inst) : family == "gbeta" ? gen_gbeta(inst, gen_beta) : gen_connected(inst);
    if (gen_two_legal) art = two_legalize(art);
    emit_json(common.output, io::artifact_to_json(art));
  });

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "build a wire-cut plan from a GD solution or explicit cuts");
  std::optional<std::size_t> pk, palpha, pbeta;
  std::string cut_list, dot_path;
  double epsilon = 0.1;
  bool as_text = false;
  plan_cmd->add_option("--graph,--circuit", common.graph, "dag, instance or circuit JSON")->required();
  plan_cmd->add_option("-k", pk, "maximum inputs per cluster");
  plan_cmd->add_option("--alpha", palpha, "maximum number of clusters");
  plan_cmd->add_option("--beta", pbeta, "maximum number of cuts");
  plan_cmd->add_option("--cuts", cut_list, "explicit comma-separated cut edge ids, one fragment per component");
  plan_cmd->add_option("--epsilon", epsilon, "target precision for the overhead metric")->capture_default_str();
  plan_cmd->add_option("--dot", dot_path, "write the fragments as DOT");
  plan_cmd->add_flag("--text", as_text, "print a table instead of JSON");
  plan_cmd->add_option("-o,--output", common.output, "output path (default stdout)");
  plan_cmd->callback([&] {
    const auto g = load_graph(common.graph);
    const auto legal = validate_legal(g.graph);
    std::optional<CutPlan> plan;
    if (!cut_list.empty()) {
      plan = make_cut_plan(legal, io::parse_cut_list(cut_list), epsilon);
    } else {
      GdInstance inst{legal, pick(pk, g.k, "-k"), pick(palpha, g.alpha, "--alpha"), pick(pbeta, g.beta, "--beta")};
      validate_instance(inst);
      EnumOptions opts;
      opts.threads = common.threads;
      auto r = optimize_min_beta(inst.graph, inst.k, inst.alpha, inst.beta, opts);
      if (!r) {
        emit_json(common.output, {{"schema", io::kSchema}, {"answer", "no"}});
        exit_code = kExitNo;
        return;
      }
      plan = make_plan(r->solution, epsilon);
    }
    if (!dot_path.empty()) io::write_text_file(dot_path, io::plan_to_dot(*plan));
    if (as_text) {
      emit(common.output, io::plan_table(*plan));
    } else {
      emit_json(common.output, io::plan_to_json(*plan));
    }
  });

  // verify
  auto* verify = app.add_subcommand("verify", "compare fragment reconstruction with direct simulation");
  std::string vcuts, obs;
  double tolerance = 1e-9;
  verify->add_option("--circuit", common.graph, "circuit JSON")->required();
  verify->add_option("--cuts", vcuts, "comma-separated cut edge ids")->required();
  verify->add_option("--obs", obs, "Pauli string, one letter per qubit")->required();
  verify->add_option("--tolerance", tolerance, "maximum absolute difference")->capture_default_str();
  verify->add_option("-o,--output", common.output, "output path (default stdout)");
  verify->callback([&] {
    const auto circuit = io::circuit_from_json(io::read_json_file(common.graph));
    const auto r = crosscheck(circuit, io::parse_cut_list(vcuts), obs);
    emit_json(common.output, io::crosscheck_to_json(r, tolerance));
    if (r.abs_error > tolerance) exit_code = kExitInternal;
  });

  // paths
  auto* paths = app.add_subcommand("paths", "extract t edge-disjoint input-to-output paths");
  paths->add_option("--graph", common.graph, "dag, instance or circuit JSON")->required();
  paths->add_option("-o,--output", common.output, "output path (default stdout)");
  paths->callback([&] {
    emit_json(common.output, io::paths_to_json(edge_disjoint_paths(validate_legal(load_graph(common.graph).graph))));
  });

  // export-dot
  auto* dot = app.add_subcommand("export-dot", "render a dag as graphviz DOT");
  std::string dot_cuts;
  bool duplicated = false;
  dot->add_option("--graph", common.graph, "dag, instance or circuit JSON")->required();
  dot->add_option("--cuts", dot_cuts, "comma-separated edge ids to highlight");
  dot->add_flag("--duplicated", duplicated, "render the graph after duplicating the cuts");
  dot->add_option("-o,--output", common.output, "output path (default stdout)");
  dot->callback([&] {
    const auto g = load_graph(common.graph).graph;
    const auto cuts = io::parse_cut_list(dot_cuts);
    if (duplicated) {
      emit(common.output, io::to_dot(duplicate(validate_legal(g), cuts).graph, "duplicated"));
    } else {
      for (auto e : cuts) {
        if (!g.has_edge(e)) throw UnknownEdgeId("unknown edge " + std::to_string(index_of(e)));
      }
      emit(common.output, io::to_dot(g, "dag", cuts));
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("UsageError", e.what());
    return kExitInvalid;
  } catch (const LegalityError& e) {
    report_error(e.kind(), e.what());
    return kExitInvalid;
  } catch (const ValidationError& e) {
    report_error(e.kind(), e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    report_error("InternalError", e.what());
    return kExitInternal;
  }
  return exit_code;
}

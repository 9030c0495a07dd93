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

#include <string>

#include <json.hpp>

#include "dagcut/circuit.hpp"
#include "dagcut/gd_constraints.hpp"
#include "dagcut/gd_enum.hpp"
#include "dagcut/knitting.hpp"
#include "dagcut/reductions.hpp"
#include "dagcut/simverify.hpp"

namespace dagcut::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "dagcut/1";

/// Reads and parses a JSON file; ValidationError on I/O or syntax errors.
json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Dag: {"vertices":[{"id","kind","label"}], "edges":[{"id","src","dst"}]}.
// Ids must be exactly 0..n-1 in some order.
json dag_to_json(const DagGraph& g);
DagGraph dag_from_json(const json& j);

// Circuit: {"qubits":n, "gates":[{"name","qubits","matrix"?}]}; a matrix is
// a row-major list of [re, im] pairs, flat or nested by rows.
json circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const json& j);

/// Dag schema plus "cuts" and a "synthetic" flag per vertex.
json duplicated_to_json(const DuplicatedDag& d);

json legality_report(const DagGraph& g, bool require_two_legal);
json paths_to_json(const PathDecomposition& p);

json solution_to_json(const GdInstance& inst, const GdSolution& sol);
json artifact_to_json(const ReductionArtifact& a);
json model_solution_to_json(const ConstraintModel& m, const PartitionResult& r);

json plan_to_json(const CutPlan& plan);
std::string plan_table(const CutPlan& plan);

json crosscheck_to_json(const CrosscheckReport& r, double tolerance);

/// One DOT digraph; cut edges are drawn dashed.
std::string to_dot(const DagGraph& g, const std::string& name, const CutSet& cuts = {});
/// Every fragment of the plan as a DOT cluster subgraph.
std::string plan_to_dot(const CutPlan& plan);

/// Parses "3,7,11" into edge ids; an empty string gives an empty set.
CutSet parse_cut_list(const std::string& text);

}  // namespace dagcut::io

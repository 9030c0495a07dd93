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

#include <gtest/gtest.h>

#include "dagcut/io.hpp"
#include "support/oracles.hpp"

namespace dagcut {
namespace {

using io::json;

TEST(DagJson, RoundTrip) {
  std::mt19937 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const auto g = testing::random_legal_dag(rng, 30);
    const auto j = io::dag_to_json(g);
    EXPECT_EQ(j["schema"], "dagcut/1");
    const auto back = io::dag_from_json(json::parse(j.dump()));
    EXPECT_EQ(io::dag_to_json(back), j);
  }
}

TEST(DagJson, AcceptsShuffledIds) {
  const auto j = json::parse(R"({"vertices":[{"id":1,"kind":"output","label":"o"},{"id":0,"kind":"input","label":"i"}],
                                 "edges":[{"id":0,"src":0,"dst":1}]})");
  const auto g = io::dag_from_json(j);
  EXPECT_EQ(g.vertex(vertex_at(0)).kind, VertexKind::Input);
  EXPECT_EQ(validate_legal(g).t(), 1u);
}

TEST(DagJson, Errors) {
  EXPECT_THROW(io::dag_from_json(json::parse(R"({"vertices":[]})")), ValidationError);
  EXPECT_THROW(io::dag_from_json(json::parse(R"({"vertices":[{"id":0,"kind":"input"},{"id":0,"kind":"output"}],"edges":[]})")),
               ValidationError);
  EXPECT_THROW(io::dag_from_json(json::parse(R"({"vertices":[{"id":0,"kind":"wire"}],"edges":[]})")), ValidationError);
  EXPECT_THROW(io::dag_from_json(json::parse(R"({"vertices":[{"id":0,"kind":"input"}],"edges":[{"id":0,"src":0,"dst":4}]})")),
               ValidationError);
  EXPECT_THROW(io::dag_from_json(json::parse(R"({"vertices":[{"id":"a","kind":"input"}],"edges":[]})")), ValidationError);
}

TEST(CircuitJson, RoundTripWithMatrix) {
  Eigen::MatrixXcd m(2, 2);
  m << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
  const Circuit c{2, {{"H", {0}, {}}, {"myY", {1}, m}, {"CX", {0, 1}, {}}}};
  const auto back = io::circuit_from_json(json::parse(io::circuit_to_json(c).dump()));
  ASSERT_EQ(back.gates.size(), 3u);
  ASSERT_TRUE(back.gates[1].matrix);
  EXPECT_EQ(*back.gates[1].matrix, m);
  EXPECT_EQ(back.gates[2].qubits, (std::vector<int>{0, 1}));
}

TEST(CircuitJson, NestedRows) {
  const auto j = json::parse(R"({"qubits":1,"gates":[{"name":"x","qubits":[0],"matrix":[[[0,0],[1,0]],[[1,0],[0,0]]]}]})");
  const auto c = io::circuit_from_json(j);
  EXPECT_EQ((*c.gates[0].matrix)(0, 1), std::complex<double>(1, 0));
  EXPECT_THROW(io::circuit_from_json(json::parse(R"({"qubits":1,"gates":[{"name":"x","qubits":[0],"matrix":[[0,0],[1,0],[1,0]]}]})")),
               ValidationError);
}

TEST(PlanJson, Schema) {
  const auto g = validate_legal(build_dag(Circuit{2, {{"H", {0}, {}}, {"CX", {0, 1}, {}}}}));
  const auto plan = make_cut_plan(g, {edge_at(1)}, 0.1);
  const auto j = io::plan_to_json(plan);
  EXPECT_EQ(j["schema"], "dagcut/1");
  EXPECT_EQ(j["K"], 1);
  EXPECT_EQ(j["cuts"][0]["edge"], 1);
  EXPECT_EQ(j["cuts"][0]["src_frag"], 0);
  EXPECT_EQ(j["cuts"][0]["dst_frag"], 1);
  EXPECT_EQ(j["terms"].size(), 8u);
  EXPECT_EQ(j["terms"][3]["observable"], "X");
  EXPECT_EQ(j["terms"][3]["prep"], "-");
  EXPECT_NEAR(j["overhead"]["metric"].get<double>(), 1600.0, 1e-9);
  EXPECT_EQ(j["overhead"]["epsilon"], 0.1);
  EXPECT_NE(io::plan_table(plan).find("tuples = 8"), std::string::npos);
  const auto dot = io::plan_to_dot(plan);
  EXPECT_NE(dot.find("cluster_0"), std::string::npos);
  EXPECT_NE(dot.find("prep:1"), std::string::npos);
}

TEST(Dot, MarksCuts) {
  const auto g = build_dag(Circuit{1, {{"H", {0}, {}}}});
  const auto dot = io::to_dot(g, "d", {edge_at(1)});
  EXPECT_NE(dot.find("digraph \"d\""), std::string::npos);
  EXPECT_NE(dot.find("dashed"), std::string::npos);
}

TEST(Legality, ReportListsViolations) {
  DagGraph g;
  g.add_vertex(VertexKind::Input, "i");
  const auto j = io::legality_report(g, false);
  EXPECT_FALSE(j["legal"].get<bool>());
  EXPECT_FALSE(j["violations"].empty());
}

TEST(CutList, Parsing) {
  EXPECT_EQ(io::parse_cut_list("3,7"), (CutSet{edge_at(3), edge_at(7)}));
  EXPECT_TRUE(io::parse_cut_list("").empty());
  EXPECT_THROW(io::parse_cut_list("3,x"), ValidationError);
  EXPECT_THROW(io::parse_cut_list("-1"), ValidationError);
}

}  // namespace
}  // namespace dagcut

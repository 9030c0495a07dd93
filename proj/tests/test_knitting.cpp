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

#include <random>

#include "dagcut/knitting.hpp"
#include "dagcut/circuit.hpp"
#include "dagcut/reductions.hpp"

namespace dagcut {
namespace {

using namespace std::complex_literals;

double max_abs(const Eigen::Matrix2cd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(Terms, IdentityOnThePauliBasis) {
  for (char p : {'I', 'X', 'Y', 'Z'}) {
    const auto A = pauli_matrix(p);
    EXPECT_LE(max_abs(apply_wire_identity(A) - A), 1e-15) << p;
  }
}

TEST(Terms, IdentityRecomputedFromFirstPrinciples) {
  // Sum c_i Tr(A O_i) |psi_i><psi_i| written out by hand from the table
  // entries, without apply_wire_identity.
  std::mt19937 rng(51);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::Matrix2cd A;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) A(r, c) = {n(rng), n(rng)};
    Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
    for (const auto& t : wire_cut_terms()) {
      const Eigen::Matrix2cd rho = t.prep_state * t.prep_state.adjoint();
      sum += t.coefficient * (A * pauli_matrix(t.observable)).trace() * rho;
    }
    EXPECT_LE(max_abs(sum - A), 1e-12);
  }
}

TEST(Terms, FixedOrderAndValues) {
  const auto& t = wire_cut_terms();
  const std::string obs = "IIXXYYZZ";
  const std::vector<std::string> prep{"0", "1", "+", "-", "i", "-i", "0", "1"};
  const std::vector<double> coef{0.5, 0.5, 0.5, -0.5, 0.5, -0.5, 0.5, -0.5};
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(t[i].observable, obs[i]);
    EXPECT_EQ(t[i].prep_label, prep[i]);
    EXPECT_DOUBLE_EQ(t[i].coefficient, coef[i]);
    EXPECT_NEAR(t[i].prep_state.norm(), 1.0, 1e-15);
    // Each preparation is an eigenstate of its observable.
    const Eigen::Vector2cd image = pauli_matrix(t[i].observable) * t[i].prep_state;
    const auto overlap = t[i].prep_state.adjoint() * image;
    EXPECT_NEAR(std::abs(std::abs(overlap(0)) - 1.0), 0.0, 1e-15);
  }
}

TEST(Terms, UnknownPauliRejected) { EXPECT_THROW(pauli_matrix('Q'), ValidationError); }

TEST(Terms, ChannelFidelityForOneCut) {
  // Feeding rho through the decomposition with a final observable M:
  // sum_i c_i Tr(rho O_i) Tr(M rho_i) = Tr(M rho).
  std::mt19937 rng(52);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::Vector2cd psi(std::complex<double>(n(rng), n(rng)), std::complex<double>(n(rng), n(rng)));
    psi.normalize();
    const Eigen::Matrix2cd rho = psi * psi.adjoint();
    for (char m : {'X', 'Y', 'Z'}) {
      std::complex<double> s = 0;
      for (const auto& t : wire_cut_terms()) {
        s += t.coefficient * (rho * pauli_matrix(t.observable)).trace() * (pauli_matrix(m) * t.prep_density).trace();
      }
      EXPECT_NEAR(std::abs(s - (pauli_matrix(m) * rho).trace()), 0.0, 1e-12);
    }
  }
}

TEST(Tuples, CountsAndDigits) {
  EXPECT_EQ(tuple_count(0), 1u);
  EXPECT_EQ(tuple_count(1), 8u);
  EXPECT_EQ(tuple_count(2), 64u);
  EXPECT_EQ(tuple_count(3), 512u);
  EXPECT_THROW(tuple_count(22), InvariantViolation);
  EXPECT_EQ(tuple_digits(0, 3), (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_EQ(tuple_digits(8 * 8 * 5 + 8 * 2 + 7, 3), (std::vector<std::size_t>{7, 2, 5}));
  for (std::uint64_t j = 0; j < 512; ++j) {
    const auto d = tuple_digits(j, 3);
    EXPECT_EQ(d[0] + 8 * d[1] + 64 * d[2], j);
    EXPECT_DOUBLE_EQ(std::abs(tuple_coefficient(j, 3)), 0.125);
  }
}

TEST(Overhead, Metric) {
  EXPECT_DOUBLE_EQ(overhead_metric(1, 0.1), 1600.0);
  EXPECT_DOUBLE_EQ(overhead_metric(0, 0.1), 100.0);
  EXPECT_DOUBLE_EQ(overhead_metric(2, 0.5), 1024.0);
}

GdSolution solution_for(const LegalDag& g, const CutSet& cuts) {
  GdSolution sol;
  sol.cuts = cuts;
  sol.duplicated = duplicate(g, cuts);
  sol.assignment = singleton_clusters(sol.duplicated);
  sol.stats = cluster_stats(sol.duplicated, sol.assignment);
  return sol;
}

TEST(Plan, BellCutGivesOneAndTwoQubitFragments) {
  const auto g = validate_legal(build_dag(Circuit{2, {{"H", {0}, {}}, {"CX", {0, 1}, {}}}}));
  const auto plan = make_plan(solution_for(g, {edge_at(1)}), 0.1);
  EXPECT_EQ(plan.K, 1u);
  EXPECT_EQ(plan.tuple_count(), 8u);
  EXPECT_DOUBLE_EQ(plan.overhead, 1600.0);
  ASSERT_EQ(plan.fragments.size(), 2u);
  EXPECT_EQ(plan.fragments[0].qubits, 1u);
  EXPECT_EQ(plan.fragments[1].qubits, 2u);
  ASSERT_EQ(plan.cuts.size(), 1u);
  EXPECT_EQ(plan.cuts[0].src_fragment, 0u);
  EXPECT_EQ(plan.cuts[0].dst_fragment, 1u);
  bool obs = false, prep = false;
  for (const auto& f : plan.fragments) {
    for (const auto& v : f.graph.vertices()) {
      obs = obs || v.label == "obs:1";
      prep = prep || v.label == "prep:1";
    }
  }
  EXPECT_TRUE(obs);
  EXPECT_TRUE(prep);
}

TEST(Plan, ZeroCutsOneTuple) {
  const auto g = validate_legal(build_dag(Circuit{2, {{"H", {0}, {}}, {"CX", {0, 1}, {}}}}));
  const auto plan = make_plan(solution_for(g, {}), 0.1);
  EXPECT_EQ(plan.tuple_count(), 1u);
  EXPECT_DOUBLE_EQ(plan.overhead, 100.0);
  EXPECT_THROW(make_plan(solution_for(g, {}), 0.0), InvariantViolation);
}

TEST(Plan, FragmentQubitsSumToTPlusK) {
  for (const auto& inst : enumerate_3partition(2, 13)) {
    if (!oracle_3partition(inst)) continue;
    const auto a = gen_connected(inst);
    const auto sol = solve_decision(a.instance);
    ASSERT_TRUE(sol);
    const auto plan = make_plan(*sol, 0.1);
    std::size_t total = 0, vertices = 0;
    for (const auto& f : plan.fragments) {
      total += f.qubits;
      vertices += f.graph.vertex_count();
      EXPECT_NO_THROW(validate_legal(f.graph));
    }
    EXPECT_EQ(total, a.instance.graph.t() + plan.K);
    EXPECT_EQ(vertices, sol->duplicated.graph.vertex_count());
  }
}

TEST(Plan, ExplicitCutsRejectHorizontalCuts) {
  // Any cut on a lone wire leaves a fragment fed only by a preparation.
  const auto wire = validate_legal(build_dag(Circuit{1, {{"H", {0}, {}}}}));
  EXPECT_THROW(make_cut_plan(wire, {edge_at(0)}, 0.1), ValidationError);
  EXPECT_THROW(make_cut_plan(wire, {edge_at(1)}, 0.1), ValidationError);
  // H -> CX is accepted: CX also receives qubit 1 from an original input.
  const auto bell = validate_legal(build_dag(Circuit{2, {{"H", {0}, {}}, {"CX", {0, 1}, {}}}}));
  EXPECT_NO_THROW(make_cut_plan(bell, {edge_at(1)}, 0.1));
}

}  // namespace
}  // namespace dagcut

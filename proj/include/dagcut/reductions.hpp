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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "dagcut/gd_enum.hpp"

namespace dagcut {

struct ThreePartitionInstance {
  std::size_t m = 1;
  std::size_t B = 1;
  std::vector<std::size_t> A;
};

/// Throws InvariantViolation unless |A| = 3m, sum A = mB and B/4 < a < B/2.
void validate_3partition(const ThreePartitionInstance& inst);

using Triple = std::array<std::size_t, 3>;

/// Exhaustive search; the triples hold values, not indices.
std::optional<std::vector<Triple>> oracle_3partition(const ThreePartitionInstance& inst);

/// Every valid instance with 1 <= m <= m_max and 1 <= B <= B_max, with A
/// sorted ascending.
std::vector<ThreePartitionInstance> enumerate_3partition(std::size_t m_max, std::size_t B_max);

enum class Family { G0, Gbeta, Connected, TwoLegalized };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct ReductionArtifact {
  GdInstance instance;
  Family family = Family::G0;
  Family base_family = Family::G0;  // differs from family only for TwoLegalized
  ThreePartitionInstance source;
  std::size_t beta_param = 0;  // gadget copies in the Gbeta family
  /// Hints for tests, never read by solvers: the designated cut set and the
  /// input counts of the components it produces, sorted ascending.
  CutSet expected_cuts;
  std::vector<std::size_t> expected_component_inputs;
};

/// Forest of 3m stars; (k, alpha, beta) = (B, m, 0).
ReductionArtifact gen_g0(const ThreePartitionInstance& inst);

/// G0 plus `beta` copies of the two-hub gadget; (B, m + 2 beta, beta).
ReductionArtifact gen_gbeta(const ThreePartitionInstance& inst, std::size_t beta);

/// Leaves and connectors alternating on a backbone; (B + 3, 4m - 1, 6m - 2).
ReductionArtifact gen_connected(const ThreePartitionInstance& inst);

struct TwoLegalExpansion {
  LegalDag graph;
  /// Source edge id -> expanded edge id; nullopt for edges absorbed when a
  /// degree-1 gate is contracted.
  std::vector<std::optional<EdgeId>> edge_map;
};

/// Replaces every gate of degree d > 2 by a chain of d - 1 two-in/two-out
/// nodes and contracts degree-1 gates into a plain wire.
TwoLegalExpansion two_legal_expand_mapped(const LegalDag& g);

inline LegalDag two_legal_expand(const LegalDag& g) { return two_legal_expand_mapped(g).graph; }

/// Applies two_legal_expand to the artifact's graph, carrying the hints.
ReductionArtifact two_legalize(const ReductionArtifact& a);

}  // namespace dagcut

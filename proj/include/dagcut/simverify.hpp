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

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "dagcut/circuit.hpp"
#include "dagcut/knitting.hpp"

namespace dagcut {

inline constexpr int kMaxQubits = 12;

/// Dense state over n qubits. Qubit q is bit q of the amplitude index.
template <typename Real>
class BasicStatevector {
 public:
  using Scalar = std::complex<Real>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  /// |0...0>. Throws TooManyQubits above kMaxQubits.
  explicit BasicStatevector(int qubits) : n_(qubits) {
    if (qubits < 0) throw ValidationError("negative qubit count");
    if (qubits > kMaxQubits) {
      throw TooManyQubits(std::to_string(qubits) + " qubits exceeds the limit of " +
                          std::to_string(kMaxQubits));
    }
    amp_ = Vector::Zero(Eigen::Index{1} << qubits);
    amp_(0) = 1;
  }

  /// Tensor product of single-qubit states; states[q] belongs to qubit q.
  static BasicStatevector product(const std::vector<Eigen::Matrix<Scalar, 2, 1>>& states) {
    BasicStatevector sv(static_cast<int>(states.size()));
    for (Eigen::Index i = 0; i < sv.amp_.size(); ++i) {
      Scalar a = 1;
      for (std::size_t q = 0; q < states.size(); ++q) a *= states[q]((i >> q) & 1);
      sv.amp_(i) = a;
    }
    return sv;
  }

  int qubits() const { return n_; }
  const Vector& amplitudes() const { return amp_; }
  Real norm() const { return amp_.norm(); }

  /// Applies a 2^k x 2^k matrix; targets[0] is the most significant bit of
  /// its row index.
  void apply(const Matrix& u, const std::vector<int>& targets) {
    const int k = static_cast<int>(targets.size());
    const Eigen::Index dim = Eigen::Index{1} << k;
    std::vector<Eigen::Index> offset(static_cast<std::size_t>(dim), 0);
    Eigen::Index mask = 0;
    for (Eigen::Index r = 0; r < dim; ++r) {
      for (int b = 0; b < k; ++b) {
        if ((r >> (k - 1 - b)) & 1) offset[r] |= Eigen::Index{1} << targets[b];
      }
    }
    for (int t : targets) mask |= Eigen::Index{1} << t;
    Vector in(dim);
    for (Eigen::Index base = 0; base < amp_.size(); ++base) {
      if (base & mask) continue;
      for (Eigen::Index r = 0; r < dim; ++r) in(r) = amp_(base | offset[r]);
      const Vector out = u * in;
      for (Eigen::Index r = 0; r < dim; ++r) amp_(base | offset[r]) = out(r);
    }
  }

  /// <psi| (ops[0] on qubit 0) x ... |psi>, real part.
  Real expectation(const std::vector<Eigen::Matrix<Scalar, 2, 2>>& ops) const {
    BasicStatevector phi = *this;
    for (int q = 0; q < n_; ++q) {
      const auto& op = ops.at(static_cast<std::size_t>(q));
      if (op.isIdentity(Real(0))) continue;
      phi.apply(Matrix(op), {q});
    }
    return amp_.dot(phi.amp_).real();
  }

 private:
  int n_;
  Vector amp_;
};

using Statevector = BasicStatevector<double>;

/// Matrix for a gate: explicit matrix if present, otherwise the builtin
/// named H, X, Y, Z, S, T, CX, CZ or SWAP. Throws UnknownGate, or
/// ValidationError if the matrix is not unitary to 1e-10.
Eigen::MatrixXcd gate_matrix(const GateOp& gate);

/// Throws ValidationError unless obs has one of I, X, Y, Z per qubit.
void validate_observable(const std::string& obs, int qubits);

/// Exact <psi| P |psi> with obs[q] acting on qubit q.
double simulate_expectation(const Circuit& circuit, const std::string& obs);

/// Term index bound to each cut edge in one fragment evaluation.
struct FragmentJob {
  std::size_t fragment = 0;
  std::map<EdgeId, std::size_t> binding;
};

/// Expectation of one fragment with its placeholders bound. The plan must
/// come from the circuit's traced dag. Throws UnboundPlaceholder when a
/// placeholder of the fragment has no binding.
double evaluate_fragment(const Circuit& circuit, const CutPlan& plan, const std::string& obs,
                         const FragmentJob& job);

/// Sum over all 8^K tuples of the coefficient product times the product of
/// fragment values, added pairwise in ascending tuple order.
double reconstruct_expectation(const Circuit& circuit, const CutPlan& plan, const std::string& obs);

struct CrosscheckReport {
  double direct = 0.0;
  double reconstructed = 0.0;
  double abs_error = 0.0;
  std::size_t K = 0;
  std::uint64_t tuples = 0;
  std::size_t fragments = 0;
};

/// Cuts the circuit's dag, keeps one fragment per component and compares
/// reconstruction with direct simulation. Throws ValidationError when some
/// fragment contains no original input (a horizontal cut). This gate is
/// weaker than GD acceptability: a fragment may end in observable
/// placeholders only, as when the Bell circuit is cut between H and CX.
CrosscheckReport crosscheck(const Circuit& circuit, const CutSet& cuts, const std::string& obs);

}  // namespace dagcut

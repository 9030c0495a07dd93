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

#include <stdexcept>
#include <string>

namespace dagcut {

/// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string kind() const { return "ValidationError"; }
};

class UnknownEdgeId : public ValidationError {
 public:
  using ValidationError::ValidationError;
  std::string kind() const override { return "UnknownEdgeId"; }
};

class InvariantViolation : public ValidationError {
 public:
  using ValidationError::ValidationError;
  std::string kind() const override { return "InvariantViolation"; }
};

class TooManyQubits : public ValidationError {
 public:
  using ValidationError::ValidationError;
  std::string kind() const override { return "TooManyQubits"; }
};

class UnknownGate : public ValidationError {
 public:
  using ValidationError::ValidationError;
  std::string kind() const override { return "UnknownGate"; }
};

class UnboundPlaceholder : public ValidationError {
 public:
  using ValidationError::ValidationError;
  std::string kind() const override { return "UnboundPlaceholder"; }
};

/// A condition that valid inputs can never trigger; signals a bug.
class InternalInvariantBroken : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dagcut

// Copyright 2026 The tpack Authors
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
#include <utility>

namespace tpack {

/// Raised when an argument violates an operation's precondition
/// (bad sizes, divisibility, degree conditions not met, ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Raised when a property that the underlying argument guarantees fails to
/// hold at run time. Indicates either a bug or an instance outside the range
/// where the argument's slack applies.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// Malformed input files (edge lists, tournament files).
class LoadError : public std::runtime_error {
 public:
  explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

/// A staged constructive procedure could not complete one of its stages.
class StageFailed : public std::runtime_error {
 public:
  StageFailed(std::string stage, const std::string& detail)
      : std::runtime_error(stage + ": " + detail), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

/// No C3 element of a {T3, C3}-packing admits a swap move.
class SwapNotFound : public std::runtime_error {
 public:
  explicit SwapNotFound(const std::string& what) : std::runtime_error(what) {}
};

/// No sampled candidate set turned out to be absorbing.
class FamilyEmpty : public std::runtime_error {
 public:
  explicit FamilyEmpty(const std::string& what) : std::runtime_error(what) {}
};

/// The pieces of W cannot be matched to distinct absorbers.
class AssignmentFailed : public std::runtime_error {
 public:
  explicit AssignmentFailed(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

inline void ensure(bool condition, const std::string& message) {
  if (!condition) throw InvariantViolation(message);
}

}  // namespace detail
}  // namespace tpack

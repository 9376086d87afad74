// Copyright 2026 The Authors.
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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kopt {

// Bad caller input: parameter out of range, budget larger than the candidate
// set, existing edge passed where a non-edge is required.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Operation requires a connected graph.
class DisconnectedGraph : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense O(n^2)/O(n^3) work refused because n exceeds the configured limit.
class SizeGuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  // Achieved L-norm error bound (relative) when the solver gave up.
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Every hull member pair is already an edge (or already selected).
class HullExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kopt

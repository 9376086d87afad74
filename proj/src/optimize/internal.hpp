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

#include <chrono>
#include <string>
#include <unordered_set>

#include "kopt/optimize.hpp"

namespace kopt::detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// Relative slack under which two scores count as tied; ties keep the earlier
// (lexicographically smaller) pair.
inline constexpr double kTieTol = 1e-12;

inline bool beats(double value, double best) {
  return value > best + kTieTol * std::abs(best);
}

// Throws InvalidArgument unless 1 <= k <= |Q| and g is connected.
void check_problem(const Graph& g, const AlgoParams& p);

SelectionResult start_result(Algo algo, const Graph& g, const AlgoParams& p);

// Selected edges on top of the input graph.
class EdgeSet {
 public:
  explicit EdgeSet(const Graph& g) : g_(g) {}
  bool blocked(NodeId u, NodeId v) const {
    if (g_.has_edge(u, v)) return true;
    return chosen_.count(key(Edge(u, v))) > 0;
  }
  void add(Edge e) { chosen_.insert(key(e)); }

 private:
  static std::uint64_t key(Edge e) { return (std::uint64_t(e.u) << 32) | e.v; }
  const Graph& g_;
  std::unordered_set<std::uint64_t> chosen_;
};

}  // namespace kopt::detail

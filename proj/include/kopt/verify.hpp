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

#include <functional>
#include <string>
#include <vector>

#include "kopt/graph.hpp"

namespace kopt::verify {

enum class Scale {
  Tiny,  // a minute or less
  Desk,  // adds the 200-node sketch and selector suites
  Full,  // the acceptance sizes
};

struct Check {
  std::string id;
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  // Direction of the comparison: measured <= tolerance or measured >= tolerance.
  bool at_most = true;
  // Failures of soft checks are reported as warnings.
  bool soft = false;
  double seconds = 0.0;
  double time_limit = 0.0;  // 0 = unlimited
  std::string detail;
  bool skipped = false;

  bool value_ok() const { return at_most ? measured <= tolerance : measured >= tolerance; }
  bool time_ok() const { return time_limit <= 0.0 || seconds <= time_limit; }
  bool pass() const { return skipped || (value_ok() && time_ok()); }
};

using Reporter = std::function<void(const Check&)>;

// Runs every check for `scale`, calling `report` as each one finishes.
std::vector<Check> run_suite(Scale scale, const Reporter& report = {});

// "PASS|FAIL|WARN|SKIP <id> <name>: measured <op> tolerance (seconds) detail".
std::string format_check(const Check& c);

// Hard failures (soft checks never count).
std::size_t failures(const std::vector<Check>& checks);

// Every connected simple graph on n nodes, one per isomorphism class.
std::vector<Graph> connected_graphs(std::size_t n);

}  // namespace kopt::verify

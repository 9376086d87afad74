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

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "kopt/graph.hpp"
#include "kopt/optimize.hpp"

namespace kopt {

// Result object as published in result.schema.json. Edges carry the input
// labels of `g`.
nlohmann::json result_to_json(const SelectionResult& r, const Graph& g);

// One row per step: step,u,v,kirchhoff,kirchhoff_per_node,elapsed_ms,score.
void write_result_csv(std::ostream& out, const SelectionResult& r, const Graph& g);

struct BenchRow {
  std::string graph;
  std::string algo;
  std::size_t k = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  double kirchhoff = 0.0;
  double total_ms = 0.0;
  std::string status = "ok";
};

void write_bench_header(std::ostream& out);
void write_bench_row(std::ostream& out, const BenchRow& row);

// Rows for every budget in `ks` (each <= the run's k) from one run's
// prefixes: the Kirchhoff value after step k and the time spent up to it.
std::vector<BenchRow> bench_rows(const SelectionResult& r, const std::string& graph,
                                 const std::vector<std::size_t>& ks);

}  // namespace kopt

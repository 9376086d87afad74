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

#include "kopt/report.hpp"

#include <cstdio>
#include <ostream>

#include "kopt/kernels.hpp"

namespace kopt {
namespace {

std::string_view tol_mode_name(TolMode m) { return m == TolMode::Formula ? "formula" : "fixed"; }

std::string_view track_name(TrackMode m) {
  switch (m) {
    case TrackMode::Auto: return "auto";
    case TrackMode::Dense: return "dense";
    case TrackMode::Solver: return "solver";
  }
  return "auto";
}

// Shortest text that reads back to the same double.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

nlohmann::json result_to_json(const SelectionResult& r, const Graph& g) {
  using nlohmann::json;
  const auto& p = r.params;
  json params = {
      {"k", p.k},
      {"epsilon", p.epsilon ? json(*p.epsilon) : json(nullptr)},
      {"mu", r.resolved.mu},
      {"beta", r.resolved.beta},
      {"delta", r.resolved.delta},
      {"seed", p.seed},
      {"c_jl", p.c_jl},
      {"prune", p.prune},
      {"solver_tol_mode", tol_mode_name(p.tol_mode)},
      {"fixed_tol", p.fixed_tol},
      {"max_hull_members", p.max_hull_members},
      {"tracking", track_name(p.tracking)},
  };
  json steps = json::array();
  const double n = double(r.n);
  for (const Step& s : r.steps) {
    steps.push_back({
        {"edge", {g.label(s.edge.u), g.label(s.edge.v)}},
        {"kirchhoff", s.kirchhoff},
        {"kirchhoff_per_node", s.kirchhoff / n},
        {"elapsed_ms", s.elapsed_ms},
        {"score", s.score},
    });
  }
  const Diagnostics& d = r.diagnostics;
  json rounds = json::array();
  for (const RoundInfo& info : d.rounds) {
    rounds.push_back({
        {"hull_size", info.hull_size},
        {"d_est", info.d_est},
        {"hull_capped", info.hull_capped},
        {"hull_retries", info.hull_retries},
        {"solver_iterations", info.solver_iterations},
    });
  }
  json diag = {
      {"initial_kirchhoff", d.initial_kirchhoff},
      {"initial_kirchhoff_per_node", d.initial_kirchhoff / n},
      {"kirchhoff_estimated", d.kirchhoff_estimated},
      {"tracking", d.tracking},
      {"setup_ms", d.setup_ms},
      {"solver_tol", d.solver_tol},
      {"solver_tol_floored", d.solver_tol_floored},
      {"update_tol", d.update_tol},
      {"jl_rows", d.jl_rows},
      {"prune_size", d.prune_size},
      {"hull_size", d.hull_size},
      {"subsets_evaluated", d.subsets_evaluated},
      {"simd", kernels::isa_name(kernels::active_isa())},
      {"rounds", rounds},
      {"warnings", d.warnings},
  };
  return {
      {"algo", algo_name(r.algo)},
      {"params", params},
      {"n", r.n},
      {"m", r.m},
      {"steps", steps},
      {"total_ms", r.total_ms},
      {"diagnostics", diag},
  };
}

void write_result_csv(std::ostream& out, const SelectionResult& r, const Graph& g) {
  out << "step,u,v,kirchhoff,kirchhoff_per_node,elapsed_ms,score\n";
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const Step& s = r.steps[i];
    out << i + 1 << ',' << g.label(s.edge.u) << ',' << g.label(s.edge.v) << ',' << num(s.kirchhoff)
        << ',' << num(s.kirchhoff / double(r.n)) << ',' << num(s.elapsed_ms) << ','
        << num(s.score) << '\n';
  }
}

void write_bench_header(std::ostream& out) {
  out << "graph,algo,k,n,m,K_final,K_final_per_node,total_ms,status\n";
}

void write_bench_row(std::ostream& out, const BenchRow& row) {
  out << row.graph << ',' << row.algo << ',' << row.k << ',' << row.n << ',' << row.m << ','
      << num(row.kirchhoff) << ',' << num(row.n ? row.kirchhoff / double(row.n) : 0.0) << ','
      << num(row.total_ms) << ',' << row.status << '\n';
}

std::vector<BenchRow> bench_rows(const SelectionResult& r, const std::string& graph,
                                 const std::vector<std::size_t>& ks) {
  std::vector<BenchRow> rows;
  for (std::size_t k : ks) {
    if (k == 0 || k > r.steps.size()) continue;
    double ms = r.diagnostics.setup_ms;
    for (std::size_t i = 0; i < k; ++i) ms += r.steps[i].elapsed_ms;
    rows.push_back({graph, std::string(algo_name(r.algo)), k, r.n, r.m, r.steps[k - 1].kirchhoff,
                    ms, "ok"});
  }
  return rows;
}

}  // namespace kopt

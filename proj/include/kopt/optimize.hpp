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
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kopt/graph.hpp"
#include "kopt/linalg.hpp"

namespace kopt {

enum class Algo { Deter, Grad, Approx, FastGrad, FastGradPlus, OneConv, Brute };

std::string_view algo_name(Algo a);
// Accepts the names printed by algo_name; throws InvalidArgument otherwise.
Algo parse_algo(std::string_view name);

// How sketch-based selectors pick the PCG tolerance.
enum class TolMode {
  Formula,  // solver_tolerance(n, beta, delta), floored
  Fixed,    // AlgoParams::fixed_tol as given
};

// How per-step Kirchhoff values are obtained for selectors that do not keep
// a dense pseudoinverse themselves.
enum class TrackMode {
  Auto,    // Dense up to kTrackDenseLimit nodes, Solver above
  Dense,   // exact L^+ with rank-1 updates
  Solver,  // estimated initial K, exact per-step decrements from solves
};

inline constexpr std::size_t kTrackDenseLimit = 5000;
inline constexpr std::size_t kBruteForceLimit = 1000000;

struct AlgoParams {
  std::size_t k = 50;
  // When set, overrides mu/beta/delta with epsilon/24, epsilon/3, epsilon/3.
  std::optional<double> epsilon;
  double mu = 0.01;
  double beta = 0.1;
  double delta = 0.1;
  std::uint64_t seed = 0;
  double c_jl = 1.0;
  // Eccentricity pruning in fast_grad_plus.
  bool prune = true;
  TolMode tol_mode = TolMode::Formula;
  double fixed_tol = 0.1;
  // Hull member cap (0 = none); capped rounds are flagged in diagnostics.
  std::size_t max_hull_members = 0;
  std::size_t dense_limit = kDefaultDenseLimit;
  std::size_t brute_limit = kBruteForceLimit;
  TrackMode tracking = TrackMode::Auto;
  std::size_t hutchinson_probes = 64;
  // Embedding cache for the first embedding of a run (empty = off).
  std::filesystem::path cache_dir;
};

// Parameters after the epsilon split and range checks.
struct ResolvedParams {
  double mu = 0.0;
  double beta = 0.0;
  double delta = 0.0;
  // Accuracy of approx_greedy: epsilon when given, else 2 * beta so that both
  // sketches are built at accuracy beta.
  double epsilon = 0.0;
};

ResolvedParams resolve(const AlgoParams& p);

struct Step {
  Edge edge;
  double kirchhoff = 0.0;
  double elapsed_ms = 0.0;
  // Selection score of the edge: Delta, gradient, sketched Delta or squared
  // embedding distance, depending on the algorithm.
  double score = 0.0;
};

struct RoundInfo {
  std::size_t hull_size = 0;
  double d_est = 0.0;
  bool hull_capped = false;
  std::size_t hull_retries = 0;
  std::size_t solver_iterations = 0;
};

struct Diagnostics {
  double initial_kirchhoff = 0.0;
  bool kirchhoff_estimated = false;
  std::string tracking;  // "state", "dense" or "solver"
  double setup_ms = 0.0;
  double solver_tol = 0.0;
  bool solver_tol_floored = false;
  double update_tol = 0.0;
  std::size_t jl_rows = 0;
  std::size_t prune_size = 0;
  std::size_t hull_size = 0;  // one_conv's fixed member count
  std::size_t subsets_evaluated = 0;
  std::vector<RoundInfo> rounds;
  std::vector<std::string> warnings;
};

struct SelectionResult {
  Algo algo = Algo::Deter;
  AlgoParams params;
  ResolvedParams resolved;
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<Step> steps;
  double total_ms = 0.0;
  Diagnostics diagnostics;

  std::vector<Edge> edges() const;
  double final_kirchhoff() const;
};

// Kirchhoff index of g plus edges added one at a time.
class KirchhoffTracker {
 public:
  KirchhoffTracker(const Graph& g, TrackMode mode, std::uint64_t seed,
                   std::size_t probes = 64, std::size_t dense_limit = kDefaultDenseLimit);

  double value() const { return value_; }
  double initial() const { return initial_; }
  bool estimated() const { return estimated_; }
  bool dense() const { return dense_; }
  // Folds in the non-edge e and returns the new value.
  double add(Edge e);

 private:
  bool dense_ = true;
  bool estimated_ = false;
  double initial_ = 0.0;
  double value_ = 0.0;
  std::size_t n_ = 0;
  Eigen::MatrixXd lp_;
  std::optional<LaplacianSolver> solver_;
};

// Optimal k-subset by enumeration. Edges are reported in lexicographic order
// with the Kirchhoff index after each prefix. Throws SizeGuardExceeded when
// C(|Q|, k) exceeds params.brute_limit.
SelectionResult brute_force(const Graph& g, const AlgoParams& params);

SelectionResult deter(const Graph& g, const AlgoParams& params);
SelectionResult grad(const Graph& g, const AlgoParams& params);
SelectionResult approx_greedy(const Graph& g, const AlgoParams& params);
SelectionResult fast_grad(const Graph& g, const AlgoParams& params);
SelectionResult fast_grad_plus(const Graph& g, const AlgoParams& params);
SelectionResult one_conv(const Graph& g, const AlgoParams& params);

SelectionResult run_algorithm(Algo algo, const Graph& g, const AlgoParams& params);

// Stream `stream` of a 64-bit seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace kopt

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
#include <span>
#include <vector>

#include "kopt/graph.hpp"
#include "kopt/linalg.hpp"

namespace kopt {

// Columns per block solve when building sketches.
inline constexpr std::size_t kSketchChunk = 64;

struct SolverTolerance {
  double value = 0.0;
  bool floored = false;
};

inline constexpr double kSolverTolFloor = 1e-10;

// (delta / 3n) sqrt(6 (1 - beta) / (n (n^2 - 1) (1 + beta))), floored.
SolverTolerance solver_tolerance(std::size_t n, double beta, double delta);

// Node-major t-dimensional coordinates: node i occupies x[i*t, (i+1)*t).
struct NodeCoordinates {
  std::size_t n = 0;
  std::size_t t = 0;
  std::vector<double> x;

  const double* coords(NodeId i) const { return x.data() + std::size_t(i) * t; }
  double* coords(NodeId i) { return x.data() + std::size_t(i) * t; }
  // Squared distance between the columns of u and v.
  double query(NodeId u, NodeId v) const;
};

// Z = Q_{t x m} B L^+ with t = ceil(c_jl ln n / (epsilon/2)^2); squared column
// distances approximate effective resistances.
struct ResistanceSketch : NodeCoordinates {
  std::uint64_t seed = 0;
  double epsilon = 0.0;
  double solver_tol = 0.0;
};

// X = Q_{t x n} L^+ with t = ceil(c_jl ln n / beta^2); squared column distances
// approximate biharmonic distances b^T L2+ b.
struct EmbeddingSketch : NodeCoordinates {
  std::uint64_t seed = 0;
  double beta = 0.0;
  double solver_tol = 0.0;
  double c_jl = 1.0;
};

ResistanceSketch build_resistance_sketch(const Graph& g, double epsilon, std::uint64_t seed,
                                         double c_jl = 1.0, double solver_tol = 0.0);
ResistanceSketch build_resistance_sketch(const Graph& g, const LaplacianSolver& solver,
                                         double epsilon, std::uint64_t seed, double c_jl,
                                         double solver_tol);
double query_resistance(const ResistanceSketch& s, NodeId u, NodeId v);

EmbeddingSketch embed_nodes(const Graph& g, double beta, double solver_tol, std::uint64_t seed,
                            double c_jl = 1.0);
EmbeddingSketch embed_nodes(const LaplacianSolver& solver, double beta, double solver_tol,
                            std::uint64_t seed, double c_jl = 1.0);
double query_biharmonic(const EmbeddingSketch& s, NodeId u, NodeId v);

struct EmbeddingUpdate {
  std::vector<double> y;  // ~ L^+ b_e before the edge is added
  double denominator = 0.0;
  SolveStats stats;
};

// Folds the non-edge e into the embedding by one solve and a rank-1 column
// update X_i -= (Q y) y_i / (1 + y_x - y_y), then adds e to the solver. Only
// the listed columns are touched when `columns` is non-empty.
EmbeddingUpdate update_embedding(EmbeddingSketch& s, LaplacianSolver& solver, Edge e,
                                 double solver_tol0, std::span<const NodeId> columns = {});

// Binary cache keyed by (graph fingerprint, t, seed, beta, solver_tol, c_jl).
void save_embedding(const std::filesystem::path& path, const EmbeddingSketch& s,
                    std::uint64_t fingerprint);
std::optional<EmbeddingSketch> load_embedding(const std::filesystem::path& path,
                                              std::uint64_t fingerprint, std::size_t n,
                                              double beta, double solver_tol,
                                              std::uint64_t seed, double c_jl);
std::filesystem::path embedding_cache_path(const std::filesystem::path& dir,
                                           std::uint64_t fingerprint, double beta,
                                           double solver_tol, std::uint64_t seed, double c_jl);

}  // namespace kopt

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

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kopt/graph.hpp"

namespace kopt {

inline constexpr std::size_t kDefaultDenseLimit = 20000;

Eigen::MatrixXd laplacian_dense(const Graph& g);

// Dense L^+ and (L^+)^2 for the graph `graph`, which tracks the edges folded
// in by the rank-1 updates below.
struct DenseSpectralState {
  Graph graph;
  Eigen::MatrixXd lp;
  Eigen::MatrixXd lp2;

  std::size_t n() const { return graph.n(); }
};

// L^+ = (L + J/n)^{-1} - J/n through a Cholesky factorization. Throws
// DisconnectedGraph when L + J/n is not positive definite and
// SizeGuardExceeded above `limit` nodes.
DenseSpectralState pseudo_inverse(const Graph& g, std::size_t limit = kDefaultDenseLimit);

// Only L^+, for callers that never touch the squared matrix.
Eigen::MatrixXd pseudo_inverse_matrix(const Graph& g, std::size_t limit = kDefaultDenseLimit);

// Rank-1 updates for adding the non-edge e. sm_update_pinv2 reads the current
// lp, so it must run before sm_update_pinv; sm_update does both in order.
// sm_update_pinv also adds e to state.graph. Both throw InvalidArgument when
// e is already an edge. The return value is the denominator 1 + b^T L^+ b.
double sm_update_pinv2(DenseSpectralState& state, Edge e);
double sm_update_pinv(DenseSpectralState& state, Edge e);
double sm_update(DenseSpectralState& state, Edge e);

// Same update on a bare L^+ matrix (no graph bookkeeping).
double sm_update_matrix(Eigen::MatrixXd& lp, Edge e);

struct SolveStats {
  std::size_t iterations = 0;
  // Largest certified relative L-norm error bound over the block.
  double error_bound = 0.0;
};

// Preconditioned conjugate gradient for L x = b on the complement of the
// all-ones vector, with a Jacobi preconditioner. The stopping test uses
// ||x - L^+ b||_L <= ||r||_2 / sqrt(lambda2), with lambda2 taken from a
// Lanczos estimate computed on first use.
class LaplacianSolver {
 public:
  explicit LaplacianSolver(const Graph& g);

  std::size_t n() const { return degree_.size(); }

  // Folds in a new edge. The cached lambda2 estimate is kept: adding an edge
  // can only raise lambda2.
  void add_edge(Edge e);

  double lambda2_estimate() const;
  void set_lambda2_estimate(double value) { lambda2_ = value; }
  std::size_t iteration_cap() const;

  // y = L x for node-major blocks of width c (row i holds c values).
  void apply(const double* x, double* y, std::size_t c) const;

  // x ~ L^+ b with ||x - L^+ b||_L <= tol ||L^+ b||_L. b is projected onto
  // the complement of the ones vector first. Throws SolverError when the
  // iteration cap is reached.
  std::vector<double> solve(std::span<const double> b, double tol,
                            SolveStats* stats = nullptr) const;

  // Block form over node-major n x c arrays. Columns converge independently.
  void solve_block(const double* b, double* x, std::size_t c, double tol,
                   SolveStats* stats = nullptr) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adj_;
  std::vector<Edge> extra_;
  std::vector<double> degree_;
  std::size_t max_degree_ = 0;
  mutable std::optional<double> lambda2_;
};

// One-shot convenience wrapper.
std::vector<double> lap_solve(const Graph& g, std::span<const double> b, double tol);

// Smallest nonzero Laplacian eigenvalue by Lanczos with full
// reorthogonalization against a start vector orthogonal to the ones vector.
double lanczos_lambda2(const LaplacianSolver& solver, std::size_t max_steps = 150,
                       std::uint64_t seed = 0x1a2b3c4d);

// t x cols matrix with entries +-1/sqrt(t), stored as packed sign bits. Row j
// is drawn from its own generator seeded with (seed, j), so rows can be
// regenerated independently and in any order.
class SignProjection {
 public:
  SignProjection(std::size_t t, std::size_t cols, std::uint64_t seed);

  std::size_t t() const { return t_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t seed() const { return seed_; }
  double scale() const { return scale_; }

  // Entry (j, i): +-scale().
  double entry(std::size_t j, std::size_t i) const;
  // Dense row j.
  void row(std::size_t j, double* out) const;
  // out = Q y (length t).
  void multiply(std::span<const double> y, std::span<double> out) const;

 private:
  const std::uint64_t* row_bits(std::size_t j) const { return bits_.data() + j * words_; }

  std::size_t t_, cols_, words_;
  std::uint64_t seed_;
  double scale_;
  std::vector<std::uint64_t> bits_;
};

inline SignProjection jl_matrix(std::size_t t, std::size_t cols, std::uint64_t seed) {
  return SignProjection(t, cols, seed);
}

// ceil(c_jl * ln(n) / beta^2), at least 1.
std::size_t jl_rows(std::size_t n, double beta, double c_jl = 1.0);

namespace testing {
// Adds `amount` to entries (0,1) and (1,0) of every dense pseudoinverse from
// now on. Exists so the verification suites can show they catch a wrong L^+.
void set_pinv_fault(double amount);
}  // namespace testing

}  // namespace kopt

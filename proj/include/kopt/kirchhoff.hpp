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

#include "kopt/graph.hpp"
#include "kopt/linalg.hpp"

namespace kopt {

// n * tr(L^+).
double kirchhoff_index(const DenseSpectralState& state);
double kirchhoff_index(const Eigen::MatrixXd& lp);

// b^T L^+ b with b = e_u - e_v. Throws InvalidArgument for u == v.
double effective_resistance(const DenseSpectralState& state, NodeId u, NodeId v);
// b^T (L^+)^2 b = ||L^+ b||^2.
double biharmonic_sq(const DenseSpectralState& state, NodeId u, NodeId v);

// Drop in K from adding the non-edge e: n b^T L2+ b / (1 + b^T L+ b).
double marginal_decrease(const DenseSpectralState& state, Edge e);
// b^T L2+ b, the gradient of K along the weight of e up to the factor n.
double gradient(const DenseSpectralState& state, Edge e);

struct BoundReport {
  double lambda2 = 0.0;
  double gamma_lb = 0.0;  // (lambda2 / n)^2
  double alpha_ub = 0.0;  // 1 - gamma_lb
  double ratio_lb = 0.0;  // (1 - exp(-alpha_ub * gamma_lb)) / alpha_ub
  bool estimated = false;  // lambda2 from Lanczos rather than a full eigensolve
};

// (1 - exp(-alpha * gamma)) / alpha, continued to gamma at alpha = 0.
double greedy_ratio(double alpha, double gamma);

BoundReport bound_report(std::size_t n, double lambda2, bool estimated = false);

// Exact lambda2 from a dense eigensolve. Throws SizeGuardExceeded above
// `limit` and DisconnectedGraph for disconnected input.
BoundReport spectral_bounds(const Graph& g, std::size_t limit = kDefaultDenseLimit);
// Same report from a Lanczos estimate of lambda2.
BoundReport spectral_bounds_estimate(const Graph& g);

// Exact submodularity ratio and curvature of f(S) = K(G) - K(G + S) over
// subsets S of the non-edges, by enumeration. Exponential; refuses more
// than `max_candidates` non-edges.
struct ExactRatios {
  double gamma = 1.0;
  double alpha = 0.0;
};
ExactRatios exact_ratios(const Graph& g, std::size_t max_candidates = 12);

// All non-edges in lexicographic order.
std::vector<Edge> candidate_edges(const Graph& g);

}  // namespace kopt

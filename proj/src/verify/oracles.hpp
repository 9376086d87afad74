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

// Independent reference computations for tests. Nothing here shares code with
// the library beyond the Graph container.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "kopt/graph.hpp"

namespace oracle {

inline Eigen::MatrixXd laplacian(const kopt::Graph& g) {
  const auto n = Eigen::Index(g.n());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (kopt::NodeId u = 0; u < g.n(); ++u)
    for (kopt::NodeId v : g.neighbors(u)) {
      l(u, v) = -1.0;
      l(u, u) += 1.0;
    }
  return l;
}

// Pseudoinverse from the eigendecomposition, dropping the zero eigenvalue.
inline Eigen::MatrixXd pinv(const kopt::Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(g));
  const auto& lam = es.eigenvalues();
  const auto& v = es.eigenvectors();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(lam.size(), lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    if (lam[i] > 1e-9) out += (1.0 / lam[i]) * v.col(i) * v.col(i).transpose();
  return out;
}

inline std::vector<double> eigenvalues(const kopt::Graph& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(g), Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size()};
}

inline double resistance(const Eigen::MatrixXd& lp, int u, int v) {
  return lp(u, u) + lp(v, v) - 2.0 * lp(u, v);
}

// Kirchhoff index as the plain sum of pairwise resistances.
inline double kirchhoff_pairs(const kopt::Graph& g) {
  const Eigen::MatrixXd lp = pinv(g);
  double k = 0.0;
  for (int u = 0; u < int(g.n()); ++u)
    for (int v = u + 1; v < int(g.n()); ++v) k += resistance(lp, u, v);
  return k;
}

inline double biharmonic(const Eigen::MatrixXd& lp, int u, int v) {
  return (lp.col(u) - lp.col(v)).squaredNorm();
}

// n * sum 1/lambda over the nonzero spectrum.
inline double kirchhoff(const kopt::Graph& g) {
  double s = 0.0;
  for (double l : eigenvalues(g))
    if (l > 1e-9) s += 1.0 / l;
  return double(g.n()) * s;
}

inline std::vector<kopt::Edge> non_edges(const kopt::Graph& g) {
  std::vector<kopt::Edge> out;
  for (kopt::NodeId u = 0; u < g.n(); ++u)
    for (kopt::NodeId v = u + 1; v < g.n(); ++v)
      if (!g.has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

// Greedy that recomputes the spectrum for every candidate of every round.
// Near-ties keep the lexicographically first edge.
inline std::vector<kopt::Edge> greedy_from_scratch(kopt::Graph g, std::size_t k) {
  std::vector<kopt::Edge> picked;
  for (std::size_t r = 0; r < k; ++r) {
    double best = std::numeric_limits<double>::infinity();
    kopt::Edge be;
    for (const kopt::Edge& e : non_edges(g)) {
      const double kv = kirchhoff(g.with_edge(e));
      if (std::isinf(best) || kv < best - 1e-10 * std::abs(best)) {
        best = kv;
        be = e;
      }
    }
    picked.push_back(be);
    g = g.with_edge(be);
  }
  return picked;
}

// Smallest Kirchhoff index reachable with k extra edges, by enumeration.
inline double best_k_subset(const kopt::Graph& g, std::size_t k) {
  const auto cand = non_edges(g);
  double best = std::numeric_limits<double>::infinity();
  std::vector<kopt::Edge> pick;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (pick.size() == k) {
      best = std::min(best, kirchhoff(g.with_edges(pick)));
      return;
    }
    for (std::size_t i = start; i + (k - pick.size()) <= cand.size(); ++i) {
      pick.push_back(cand[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

// Hop distances by Floyd-Warshall.
inline std::vector<std::vector<int>> hop_distances(const kopt::Graph& g) {
  const int n = int(g.n());
  const int inf = std::numeric_limits<int>::max() / 4;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, inf));
  for (int u = 0; u < n; ++u) {
    d[u][u] = 0;
    for (kopt::NodeId v : g.neighbors(kopt::NodeId(u))) d[u][v] = 1;
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  return d;
}

}  // namespace oracle

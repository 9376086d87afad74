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

#include "kopt/kirchhoff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kopt/error.hpp"

namespace kopt {
namespace {

Eigen::VectorXd incidence_product(const Eigen::MatrixXd& m, NodeId u, NodeId v) {
  return m.col(u) - m.col(v);
}

void check_pair(const DenseSpectralState& s, NodeId u, NodeId v) {
  if (u == v) throw InvalidArgument("pair needs two distinct nodes");
  if (u >= s.n() || v >= s.n()) throw InvalidArgument("node id out of range");
}

void check_candidate(const DenseSpectralState& s, Edge e) {
  check_pair(s, e.u, e.v);
  if (s.graph.has_edge(e.u, e.v))
    throw InvalidArgument("(" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") is already an edge");
}

double quad(const Eigen::MatrixXd& m, NodeId u, NodeId v) {
  return m(u, u) + m(v, v) - 2.0 * m(u, v);
}

}  // namespace

double kirchhoff_index(const Eigen::MatrixXd& lp) { return double(lp.rows()) * lp.trace(); }

double kirchhoff_index(const DenseSpectralState& state) { return kirchhoff_index(state.lp); }

double effective_resistance(const DenseSpectralState& state, NodeId u, NodeId v) {
  check_pair(state, u, v);
  return std::max(0.0, quad(state.lp, u, v));
}

double biharmonic_sq(const DenseSpectralState& state, NodeId u, NodeId v) {
  check_pair(state, u, v);
  return incidence_product(state.lp, u, v).squaredNorm();
}

double marginal_decrease(const DenseSpectralState& state, Edge e) {
  check_candidate(state, e);
  return double(state.n()) * quad(state.lp2, e.u, e.v) / (1.0 + quad(state.lp, e.u, e.v));
}

double gradient(const DenseSpectralState& state, Edge e) {
  check_candidate(state, e);
  return quad(state.lp2, e.u, e.v);
}

double greedy_ratio(double alpha, double gamma) {
  if (alpha < 1e-12) return gamma;
  return -std::expm1(-alpha * gamma) / alpha;
}

BoundReport bound_report(std::size_t n, double lambda2, bool estimated) {
  BoundReport r;
  r.lambda2 = lambda2;
  const double q = lambda2 / double(n);
  r.gamma_lb = q * q;
  r.alpha_ub = std::max(0.0, 1.0 - r.gamma_lb);
  r.ratio_lb = greedy_ratio(r.alpha_ub, r.gamma_lb);
  r.estimated = estimated;
  return r;
}

BoundReport spectral_bounds(const Graph& g, std::size_t limit) {
  if (g.n() > limit)
    throw SizeGuardExceeded("dense eigensolve refused for n = " + std::to_string(g.n()));
  if (g.n() < 2 || !is_connected(g)) throw DisconnectedGraph("bounds need a connected graph");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian_dense(g), Eigen::EigenvaluesOnly);
  return bound_report(g.n(), es.eigenvalues()[1]);
}

BoundReport spectral_bounds_estimate(const Graph& g) {
  return bound_report(g.n(), LaplacianSolver(g).lambda2_estimate(), true);
}

std::vector<Edge> candidate_edges(const Graph& g) {
  std::vector<Edge> out;
  out.reserve(g.candidate_count());
  for (NodeId u = 0; u < g.n(); ++u) {
    const auto nb = g.neighbors(u);
    auto it = std::upper_bound(nb.begin(), nb.end(), u);
    for (NodeId v = u + 1; v < g.n(); ++v) {
      while (it != nb.end() && *it < v) ++it;
      if (it != nb.end() && *it == v) continue;
      out.emplace_back(u, v);
    }
  }
  return out;
}

ExactRatios exact_ratios(const Graph& g, std::size_t max_candidates) {
  const auto q = candidate_edges(g);
  if (q.size() > max_candidates)
    throw SizeGuardExceeded("exact ratio enumeration refused for " + std::to_string(q.size()) +
                            " candidates");
  const std::size_t subsets = std::size_t{1} << q.size();
  const double k0 = kirchhoff_index(pseudo_inverse_matrix(g));
  std::vector<double> f(subsets);
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    std::vector<Edge> extra;
    for (std::size_t i = 0; i < q.size(); ++i)
      if (mask >> i & 1u) extra.push_back(q[i]);
    f[mask] = k0 - kirchhoff_index(pseudo_inverse_matrix(g.with_edges(extra)));
  }

  ExactRatios out;
  double min_curv = 1.0;
  // Enumerate H subset of T as submasks.
  for (std::size_t t = 0; t < subsets; ++t) {
    for (std::size_t h = t;; h = (h - 1) & t) {
      if (h != t) {
        const double whole = f[t] - f[h];
        double parts = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i)
          if ((t & ~h) >> i & 1u) parts += f[h | (std::size_t{1} << i)] - f[h];
        if (whole > 1e-12) out.gamma = std::min(out.gamma, parts / whole);
      }
      for (std::size_t i = 0; i < q.size(); ++i) {
        const std::size_t bit = std::size_t{1} << i;
        if (!(h & bit)) continue;
        const double small = f[h] - f[h & ~bit];
        if (small > 1e-12) min_curv = std::min(min_curv, (f[t] - f[t & ~bit]) / small);
      }
      if (h == 0) break;
    }
  }
  out.alpha = 1.0 - min_curv;
  return out;
}

}  // namespace kopt

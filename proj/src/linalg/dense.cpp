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

#include <string>

#include "kopt/error.hpp"
#include "kopt/kernels.hpp"
#include "kopt/linalg.hpp"

namespace kopt {
namespace {

double g_pinv_fault = 0.0;

void check_size(const Graph& g, std::size_t limit) {
  if (g.n() > limit)
    throw SizeGuardExceeded("dense pseudoinverse refused for n = " + std::to_string(g.n()) +
                            " (limit " + std::to_string(limit) +
                            "); use a sketch-based algorithm instead");
  if (!is_connected(g)) throw DisconnectedGraph("pseudoinverse needs a connected graph");
}

void check_non_edge(const Graph& g, Edge e) {
  if (e.u == e.v || e.v >= g.n()) throw InvalidArgument("invalid edge");
  if (g.has_edge(e.u, e.v))
    throw InvalidArgument("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                          ") already present");
}

double denominator(const Eigen::MatrixXd& lp, Edge e) {
  const double den = 1.0 + lp(e.u, e.u) + lp(e.v, e.v) - 2.0 * lp(e.u, e.v);
  if (!(den > 0.0)) throw InvalidArgument("non-positive Sherman-Morrison denominator");
  return den;
}

}  // namespace

Eigen::MatrixXd laplacian_dense(const Graph& g) {
  const auto n = Eigen::Index(g.n());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (const Edge& e : g.edges()) {
    l(e.u, e.u) += 1.0;
    l(e.v, e.v) += 1.0;
    l(e.u, e.v) -= 1.0;
    l(e.v, e.u) -= 1.0;
  }
  return l;
}

Eigen::MatrixXd pseudo_inverse_matrix(const Graph& g, std::size_t limit) {
  check_size(g, limit);
  const auto n = Eigen::Index(g.n());
  const double jn = 1.0 / double(n);
  Eigen::MatrixXd a = laplacian_dense(g).array() + jn;
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success)
    throw DisconnectedGraph("L + J/n is not positive definite");
  Eigen::MatrixXd lp = llt.solve(Eigen::MatrixXd::Identity(n, n));
  lp.array() -= jn;
  // Symmetrize away the round-off of the triangular solves.
  lp = 0.5 * (lp + lp.transpose()).eval();
  if (g_pinv_fault != 0.0 && n > 1) {
    lp(0, 1) += g_pinv_fault;
    lp(1, 0) += g_pinv_fault;
  }
  return lp;
}

DenseSpectralState pseudo_inverse(const Graph& g, std::size_t limit) {
  DenseSpectralState s;
  s.graph = g;
  s.lp = pseudo_inverse_matrix(g, limit);
  s.lp2.noalias() = s.lp * s.lp;
  return s;
}

double sm_update_matrix(Eigen::MatrixXd& lp, Edge e) {
  const double den = denominator(lp, e);
  const auto n = std::size_t(lp.rows());
  const Eigen::VectorXd w = lp.col(e.u) - lp.col(e.v);
  const auto& k = kernels::active();
  for (std::size_t j = 0; j < n; ++j)
    k.axpy(-w[Eigen::Index(j)] / den, w.data(), lp.col(Eigen::Index(j)).data(), n);
  return den;
}

double sm_update_pinv2(DenseSpectralState& state, Edge e) {
  check_non_edge(state.graph, e);
  const double den = denominator(state.lp, e);
  const auto n = std::size_t(state.n());
  const Eigen::VectorXd w = state.lp.col(e.u) - state.lp.col(e.v);
  const Eigen::VectorXd z = state.lp2.col(e.u) - state.lp2.col(e.v);
  const double s = z[e.u] - z[e.v];
  const double den2 = den * den;
  const auto& k = kernels::active();
  // L2+ += (s/den^2) w w^T - (z w^T + w z^T)/den, one column at a time.
  for (std::size_t j = 0; j < n; ++j) {
    const auto jj = Eigen::Index(j);
    k.axpy2(s * w[jj] / den2 - z[jj] / den, w.data(), -w[jj] / den, z.data(),
            state.lp2.col(jj).data(), n);
  }
  return den;
}

double sm_update_pinv(DenseSpectralState& state, Edge e) {
  check_non_edge(state.graph, e);
  const double den = sm_update_matrix(state.lp, e);
  state.graph = state.graph.with_edge(e);
  return den;
}

double sm_update(DenseSpectralState& state, Edge e) {
  sm_update_pinv2(state, e);
  return sm_update_pinv(state, e);
}

namespace testing {
void set_pinv_fault(double amount) { g_pinv_fault = amount; }
}  // namespace testing

}  // namespace kopt

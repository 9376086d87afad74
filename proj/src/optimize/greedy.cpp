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

#include <cmath>
#include <limits>
#include <vector>

#include "internal.hpp"
#include "kopt/error.hpp"
#include "kopt/kernels.hpp"
#include "kopt/kirchhoff.hpp"
#include "kopt/sketch.hpp"

namespace kopt {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Best {
  Edge edge;
  double score = -std::numeric_limits<double>::infinity();
  bool found = false;

  // out[j] scores the pair (u, u + 1 + j). Existing edges are skipped.
  void scan(const Graph& g, NodeId u, const double* out, std::size_t len) {
    const auto nb = g.neighbors(u);
    auto it = std::upper_bound(nb.begin(), nb.end(), u);
    for (std::size_t j = 0; j < len; ++j) {
      const NodeId v = NodeId(u + 1 + j);
      if (it != nb.end() && *it == v) {
        ++it;
        continue;
      }
      if (!found || detail::beats(out[j], score)) {
        score = out[j];
        edge = Edge(u, v);
        found = true;
      }
    }
  }
};

// Argmax of Delta (use_ratio) or of the gradient over the non-edges of
// state.graph.
Best best_dense(const DenseSpectralState& s, bool use_ratio) {
  const std::size_t n = s.n();
  const Eigen::VectorXd d1 = s.lp.diagonal();
  const Eigen::VectorXd d2 = s.lp2.diagonal();
  const auto& k = kernels::active();
  std::vector<double> out(n);
  Best best;
  for (NodeId u = 0; u + 1 < n; ++u) {
    const std::size_t len = n - u - 1;
    const double* lp2col = s.lp2.col(u).data() + u + 1;
    if (use_ratio) {
      k.pair_ratio(double(n), d2[u], d2.data() + u + 1, lp2col, d1[u], d1.data() + u + 1,
                   s.lp.col(u).data() + u + 1, out.data(), len);
    } else {
      k.pair_form(d2[u], d2.data() + u + 1, lp2col, out.data(), len);
    }
    best.scan(s.graph, u, out.data(), len);
  }
  return best;
}

SelectionResult dense_greedy(Algo algo, const Graph& g, const AlgoParams& p) {
  detail::check_problem(g, p);
  SelectionResult r = detail::start_result(algo, g, p);
  const detail::Stopwatch total;
  DenseSpectralState state = pseudo_inverse(g, p.dense_limit);
  r.diagnostics.initial_kirchhoff = kirchhoff_index(state);
  r.diagnostics.tracking = "state";
  r.diagnostics.setup_ms = total.ms();
  for (std::size_t i = 0; i < p.k; ++i) {
    const detail::Stopwatch sw;
    const Best best = best_dense(state, algo == Algo::Deter);
    sm_update(state, best.edge);
    r.steps.push_back({best.edge, kirchhoff_index(state), sw.ms(), best.score});
  }
  r.total_ms = total.ms();
  return r;
}

double binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 0; i < k; ++i) c = c * double(n - i) / double(i + 1);
  return c;
}

struct Enumerator {
  const std::vector<Edge>& cand;
  std::size_t k;
  std::size_t n;
  std::vector<Eigen::MatrixXd> lps;
  std::vector<std::size_t> pick, best_pick;
  double base = 0.0;
  double best_k = std::numeric_limits<double>::infinity();
  std::size_t evaluated = 0;

  void run(std::size_t start, std::size_t depth, double kcur) {
    const Eigen::MatrixXd& lp = lps[depth];
    for (std::size_t i = start; i + (k - depth) <= cand.size(); ++i) {
      const Edge e = cand[i];
      pick[depth] = i;
      if (depth + 1 == k) {
        const Eigen::VectorXd w = lp.col(e.u) - lp.col(e.v);
        const double knew = kcur - double(n) * w.squaredNorm() / (1.0 + w[e.u] - w[e.v]);
        ++evaluated;
        if (best_pick.empty() || knew < best_k - detail::kTieTol * std::abs(best_k)) {
          best_k = knew;
          best_pick = pick;
        }
        continue;
      }
      lps[depth + 1] = lp;
      sm_update_matrix(lps[depth + 1], e);
      run(i + 1, depth + 1, kirchhoff_index(lps[depth + 1]));
    }
  }
};

}  // namespace

SelectionResult deter(const Graph& g, const AlgoParams& params) {
  return dense_greedy(Algo::Deter, g, params);
}

SelectionResult grad(const Graph& g, const AlgoParams& params) {
  return dense_greedy(Algo::Grad, g, params);
}

SelectionResult brute_force(const Graph& g, const AlgoParams& p) {
  detail::check_problem(g, p);
  SelectionResult r = detail::start_result(Algo::Brute, g, p);
  const detail::Stopwatch total;
  const auto cand = candidate_edges(g);
  const double subsets = binomial(cand.size(), p.k);
  if (subsets > double(p.brute_limit))
    throw SizeGuardExceeded("brute force over " + std::to_string(subsets) +
                            " subsets refused (limit " + std::to_string(p.brute_limit) + ")");
  Enumerator en{cand, p.k, g.n(), {}, std::vector<std::size_t>(p.k), {}};
  en.lps.resize(p.k);
  en.lps[0] = pseudo_inverse_matrix(g, p.dense_limit);
  en.base = kirchhoff_index(en.lps[0]);
  r.diagnostics.initial_kirchhoff = en.base;
  r.diagnostics.tracking = "state";
  en.run(0, 0, en.base);
  r.diagnostics.subsets_evaluated = en.evaluated;
  r.diagnostics.setup_ms = total.ms();

  Eigen::MatrixXd lp = en.lps[0];
  double prev = en.base;
  for (std::size_t i : en.best_pick) {
    sm_update_matrix(lp, cand[i]);
    const double kv = kirchhoff_index(lp);
    r.steps.push_back({cand[i], kv, 0.0, prev - kv});
    prev = kv;
  }
  r.total_ms = total.ms();
  return r;
}

SelectionResult approx_greedy(const Graph& g, const AlgoParams& p) {
  detail::check_problem(g, p);
  SelectionResult r = detail::start_result(Algo::Approx, g, p);
  const double eps = r.resolved.epsilon;
  const double half = eps / 2.0;
  const std::size_t n = g.n();
  auto& diag = r.diagnostics;
  if (p.tol_mode == TolMode::Formula) {
    const auto st = solver_tolerance(n, half, half);
    diag.solver_tol = st.value;
    diag.solver_tol_floored = st.floored;
  } else {
    diag.solver_tol = p.fixed_tol;
  }
  diag.jl_rows = jl_rows(n, half, p.c_jl);

  KirchhoffTracker tracker(g, p.tracking, derive_seed(p.seed, ~0ULL), p.hutchinson_probes,
                           p.dense_limit);
  diag.initial_kirchhoff = tracker.initial();
  diag.kirchhoff_estimated = tracker.estimated();
  diag.tracking = tracker.dense() ? "dense" : "solver";

  const detail::Stopwatch total;
  double tracking_ms = 0.0;
  Graph cur = g;
  LaplacianSolver solver(g);
  const auto& k = kernels::active();
  constexpr std::size_t kRows = 256;
  std::vector<double> out(n);
  for (std::size_t round = 0; round < p.k; ++round) {
    const detail::Stopwatch sw;
    const auto rs = build_resistance_sketch(cur, solver, eps, derive_seed(p.seed, 2 * round),
                                            p.c_jl, diag.solver_tol);
    const auto es =
        embed_nodes(solver, half, diag.solver_tol, derive_seed(p.seed, 2 * round + 1), p.c_jl);
    const Eigen::Map<const RowMatrix> xr(rs.x.data(), Eigen::Index(n), Eigen::Index(rs.t));
    const Eigen::Map<const RowMatrix> xb(es.x.data(), Eigen::Index(n), Eigen::Index(es.t));
    const Eigen::VectorXd nr = xr.rowwise().squaredNorm();
    const Eigen::VectorXd nb = xb.rowwise().squaredNorm();
    Best best;
    RowMatrix gr, gb;
    for (std::size_t u0 = 0; u0 + 1 < n; u0 += kRows) {
      const auto rows = Eigen::Index(std::min(kRows, n - u0));
      gr.noalias() = xr.middleRows(Eigen::Index(u0), rows) * xr.transpose();
      gb.noalias() = xb.middleRows(Eigen::Index(u0), rows) * xb.transpose();
      for (Eigen::Index q = 0; q < rows; ++q) {
        const NodeId u = NodeId(u0 + std::size_t(q));
        if (u + 1 >= n) break;
        const std::size_t len = n - u - 1;
        k.pair_ratio(double(n), nb[u], nb.data() + u + 1, gb.row(q).data() + u + 1, nr[u],
                     nr.data() + u + 1, gr.row(q).data() + u + 1, out.data(), len);
        best.scan(cur, u, out.data(), len);
      }
    }
    cur = cur.with_edge(best.edge);
    solver.add_edge(best.edge);
    const double elapsed = sw.ms();
    const detail::Stopwatch tw;
    const double kv = tracker.add(best.edge);
    tracking_ms += tw.ms();
    r.steps.push_back({best.edge, kv, elapsed, best.score});
  }
  r.total_ms = total.ms() - tracking_ms;
  return r;
}

}  // namespace kopt

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

#include <algorithm>
#include <numeric>

#include "internal.hpp"
#include "kopt/error.hpp"
#include "kopt/hull.hpp"
#include "kopt/sketch.hpp"

namespace kopt {
namespace {

constexpr int kHullRetries = 3;

// Everything the three hull-based selectors share: tolerances, the Kirchhoff
// tracker (kept off the clock), the solver and the blocked-pair set.
struct HullRun {
  const Graph& g;
  const AlgoParams& p;
  SelectionResult r;
  double tol = 0.0;
  double tol0 = 0.0;
  KirchhoffTracker tracker;
  detail::Stopwatch total;
  double tracking_ms = 0.0;
  LaplacianSolver solver;
  detail::EdgeSet chosen;
  PairFilter blocked;

  HullRun(Algo algo, const Graph& graph, const AlgoParams& params)
      : g(graph), p(params), r(detail::start_result(algo, graph, params)),
        tracker(graph, params.tracking, derive_seed(params.seed, ~0ULL), params.hutchinson_probes,
                params.dense_limit),
        solver(graph), chosen(graph) {
    auto& diag = r.diagnostics;
    if (p.tol_mode == TolMode::Formula) {
      const auto st = solver_tolerance(g.n(), r.resolved.beta, r.resolved.delta);
      tol = st.value;
      diag.solver_tol_floored = st.floored;
    } else {
      tol = p.fixed_tol;
    }
    tol0 = std::min(tol, 1e-8);
    diag.solver_tol = tol;
    diag.update_tol = tol0;
    diag.jl_rows = jl_rows(g.n(), r.resolved.beta, p.c_jl);
    diag.initial_kirchhoff = tracker.initial();
    diag.kirchhoff_estimated = tracker.estimated();
    diag.tracking = tracker.dense() ? "dense" : "solver";
    blocked = [this](NodeId u, NodeId v) { return chosen.blocked(u, v); };
    total = detail::Stopwatch();
  }

  HullOptions hull_options() const {
    HullOptions o;
    o.max_members = p.max_hull_members;
    return o;
  }

  // The embedding of the input graph; shared by every selector with the same
  // seed, so it is the one worth caching.
  EmbeddingSketch first_embedding() const {
    const std::uint64_t seed = derive_seed(p.seed, 0);
    const double beta = r.resolved.beta;
    if (p.cache_dir.empty()) return embed_nodes(solver, beta, tol, seed, p.c_jl);
    const auto path = embedding_cache_path(p.cache_dir, g.fingerprint(), beta, tol, seed, p.c_jl);
    if (auto hit = load_embedding(path, g.fingerprint(), g.n(), beta, tol, seed, p.c_jl))
      return std::move(*hit);
    auto s = embed_nodes(solver, beta, tol, seed, p.c_jl);
    std::filesystem::create_directories(p.cache_dir);
    save_embedding(path, s, g.fingerprint());
    return s;
  }

  // Hull plus farthest allowed pair, halving mu when every member pair is
  // blocked.
  FarthestPair pick(const PointCloud& cloud, RoundInfo& info) {
    double mu = r.resolved.mu;
    for (int attempt = 0;; ++attempt) {
      const ExtremeSubset subset = approx_convex_hull(cloud, mu, hull_options());
      info.hull_size = subset.members.size();
      info.d_est = subset.d_est;
      info.hull_capped = subset.capped;
      info.hull_retries = std::size_t(attempt);
      try {
        return farthest_pair(cloud, subset, blocked);
      } catch (const HullExhausted&) {
        if (attempt == kHullRetries)
          throw HullExhausted("every hull member pair is blocked after " +
                              std::to_string(kHullRetries) + " retries with halved mu");
        mu /= 2.0;
      }
    }
  }

  void record(Edge e, double elapsed, double score, const RoundInfo& info) {
    chosen.add(e);
    const detail::Stopwatch tw;
    const double kv = tracker.add(e);
    tracking_ms += tw.ms();
    r.steps.push_back({e, kv, elapsed, score});
    r.diagnostics.rounds.push_back(info);
    if (info.hull_capped && r.diagnostics.warnings.empty())
      r.diagnostics.warnings.push_back("hull member cap reached; distance guarantee void");
  }

  SelectionResult finish() {
    r.total_ms = total.ms() - tracking_ms;
    return std::move(r);
  }
};

std::vector<NodeId> all_nodes(std::size_t n) {
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  return ids;
}

}  // namespace

SelectionResult fast_grad(const Graph& g, const AlgoParams& p) {
  detail::check_problem(g, p);
  HullRun run(Algo::FastGrad, g, p);
  const auto ids = all_nodes(g.n());
  for (std::size_t round = 0; round < p.k; ++round) {
    const detail::Stopwatch sw;
    const EmbeddingSketch s =
        round == 0 ? run.first_embedding()
                   : embed_nodes(run.solver, run.r.resolved.beta, run.tol,
                                 derive_seed(p.seed, round), p.c_jl);
    const auto cloud = PointCloud::view(s.x.data(), s.t, ids);
    RoundInfo info;
    const FarthestPair fp = run.pick(cloud, info);
    const Edge e(fp.u, fp.v);
    run.solver.add_edge(e);
    run.record(e, sw.ms(), fp.dist_sq, info);
  }
  return run.finish();
}

SelectionResult fast_grad_plus(const Graph& g, const AlgoParams& p) {
  detail::check_problem(g, p);
  HullRun run(Algo::FastGradPlus, g, p);
  const std::vector<NodeId> keep =
      p.prune ? prune_central_nodes(g, eccentricities(g)) : all_nodes(g.n());
  run.r.diagnostics.prune_size = keep.size();
  EmbeddingSketch s = run.first_embedding();
  run.r.diagnostics.setup_ms = run.total.ms();
  for (std::size_t round = 0; round < p.k; ++round) {
    const detail::Stopwatch sw;
    const auto cloud = PointCloud::view(s.x.data(), s.t, keep);
    RoundInfo info;
    const FarthestPair fp = run.pick(cloud, info);
    const Edge e(fp.u, fp.v);
    const auto up = update_embedding(s, run.solver, e, run.tol0, keep);
    info.solver_iterations = up.stats.iterations;
    run.record(e, sw.ms(), fp.dist_sq, info);
  }
  return run.finish();
}

SelectionResult one_conv(const Graph& g, const AlgoParams& p) {
  detail::check_problem(g, p);
  HullRun run(Algo::OneConv, g, p);
  EmbeddingSketch s = run.first_embedding();
  const auto cloud = PointCloud::view(s.x.data(), s.t, all_nodes(g.n()));
  const ExtremeSubset subset = approx_convex_hull(cloud, run.r.resolved.mu, run.hull_options());
  const std::vector<NodeId> members = subset.ids(cloud);
  run.r.diagnostics.hull_size = members.size();
  run.r.diagnostics.setup_ms = run.total.ms();
  for (std::size_t round = 0; round < p.k; ++round) {
    const detail::Stopwatch sw;
    RoundInfo info;
    info.hull_size = members.size();
    info.d_est = subset.d_est;
    info.hull_capped = subset.capped;
    FarthestPair fp;
    try {
      fp = farthest_pair(cloud, subset, run.blocked);
    } catch (const HullExhausted&) {
      throw HullExhausted("all " + std::to_string(members.size()) +
                          " hull members are pairwise blocked after " + std::to_string(round) +
                          " rounds; the fixed hull cannot supply more edges");
    }
    const Edge e(fp.u, fp.v);
    const auto up = update_embedding(s, run.solver, e, run.tol0, members);
    info.solver_iterations = up.stats.iterations;
    run.record(e, sw.ms(), fp.dist_sq, info);
  }
  return run.finish();
}

}  // namespace kopt

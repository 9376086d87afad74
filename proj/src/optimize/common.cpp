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
#include <random>

#include "internal.hpp"
#include "kopt/error.hpp"
#include "kopt/kirchhoff.hpp"

namespace kopt {

namespace {

constexpr std::pair<Algo, std::string_view> kNames[] = {
    {Algo::Deter, "deter"},       {Algo::Grad, "grad"},
    {Algo::Approx, "approx"},     {Algo::FastGrad, "fastgrad"},
    {Algo::FastGradPlus, "fastgrad+"}, {Algo::OneConv, "oneconv"},
    {Algo::Brute, "brute"},
};

void check_open_unit(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw InvalidArgument(std::string(name) + " must lie in (0, 1)");
}

}  // namespace

std::string_view algo_name(Algo a) {
  for (const auto& [algo, name] : kNames)
    if (algo == a) return name;
  return "unknown";
}

Algo parse_algo(std::string_view name) {
  for (const auto& [algo, n] : kNames)
    if (n == name) return algo;
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

ResolvedParams resolve(const AlgoParams& p) {
  ResolvedParams r;
  if (p.epsilon) {
    check_open_unit(*p.epsilon, "epsilon");
    r.epsilon = *p.epsilon;
    r.mu = r.epsilon / 24.0;
    r.beta = r.epsilon / 3.0;
    r.delta = r.epsilon / 3.0;
  } else {
    r.mu = p.mu;
    r.beta = p.beta;
    r.delta = p.delta;
    r.epsilon = 2.0 * p.beta;
  }
  check_open_unit(r.mu, "mu");
  check_open_unit(r.beta, "beta");
  check_open_unit(r.delta, "delta");
  check_open_unit(r.epsilon, "epsilon");
  if (!(p.c_jl > 0.0)) throw InvalidArgument("c_jl must be positive");
  if (p.tol_mode == TolMode::Fixed && !(p.fixed_tol > 0.0))
    throw InvalidArgument("fixed solver tolerance must be positive");
  return r;
}

std::vector<Edge> SelectionResult::edges() const {
  std::vector<Edge> out;
  out.reserve(steps.size());
  for (const Step& s : steps) out.push_back(s.edge);
  return out;
}

double SelectionResult::final_kirchhoff() const {
  return steps.empty() ? diagnostics.initial_kirchhoff : steps.back().kirchhoff;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

KirchhoffTracker::KirchhoffTracker(const Graph& g, TrackMode mode, std::uint64_t seed,
                                   std::size_t probes, std::size_t dense_limit)
    : n_(g.n()) {
  if (mode == TrackMode::Auto) mode = n_ <= kTrackDenseLimit ? TrackMode::Dense : TrackMode::Solver;
  dense_ = mode == TrackMode::Dense;
  if (dense_) {
    lp_ = pseudo_inverse_matrix(g, dense_limit);
    initial_ = kirchhoff_index(lp_);
  } else {
    if (probes == 0) throw InvalidArgument("trace estimate needs at least one probe");
    solver_.emplace(g);
    // Hutchinson estimate of tr(L^+) with Rademacher probes.
    std::mt19937_64 rng(seed);
    std::vector<double> z(n_ * probes), x(n_ * probes);
    for (double& v : z) v = (rng() & 1u) ? 1.0 : -1.0;
    solver_->solve_block(z.data(), x.data(), probes, 1e-6);
    double acc = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) acc += z[i] * x[i];
    initial_ = double(n_) * acc / double(probes);
    estimated_ = true;
  }
  value_ = initial_;
}

double KirchhoffTracker::add(Edge e) {
  if (dense_) {
    sm_update_matrix(lp_, e);
    value_ = kirchhoff_index(lp_);
    return value_;
  }
  std::vector<double> b(n_, 0.0);
  b[e.u] = 1.0;
  b[e.v] = -1.0;
  const auto y = solver_->solve(b, 1e-10);
  double yy = 0.0;
  for (double v : y) yy += v * v;
  value_ -= double(n_) * yy / (1.0 + y[e.u] - y[e.v]);
  solver_->add_edge(e);
  return value_;
}

namespace detail {

void check_problem(const Graph& g, const AlgoParams& p) {
  if (p.k == 0) throw InvalidArgument("k must be at least 1");
  if (!is_connected(g)) throw DisconnectedGraph("input graph must be connected");
  const std::size_t q = g.candidate_count();
  if (p.k > q)
    throw InvalidArgument("k = " + std::to_string(p.k) + " exceeds the " + std::to_string(q) +
                          " candidate edges");
}

SelectionResult start_result(Algo algo, const Graph& g, const AlgoParams& p) {
  SelectionResult r;
  r.algo = algo;
  r.params = p;
  r.resolved = resolve(p);
  r.n = g.n();
  r.m = g.m();
  return r;
}

}  // namespace detail

SelectionResult run_algorithm(Algo algo, const Graph& g, const AlgoParams& params) {
  switch (algo) {
    case Algo::Deter: return deter(g, params);
    case Algo::Grad: return grad(g, params);
    case Algo::Approx: return approx_greedy(g, params);
    case Algo::FastGrad: return fast_grad(g, params);
    case Algo::FastGradPlus: return fast_grad_plus(g, params);
    case Algo::OneConv: return one_conv(g, params);
    case Algo::Brute: return brute_force(g, params);
  }
  throw InvalidArgument("unknown algorithm");
}

}  // namespace kopt

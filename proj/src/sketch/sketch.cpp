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

#include "kopt/sketch.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>

#include "kopt/error.hpp"
#include "kopt/kernels.hpp"

namespace kopt {
namespace {

void check_unit_interval(double v, const char* name) {
  if (!(v > 0.0 && v < 1.0)) throw InvalidArgument(std::string(name) + " must lie in (0, 1)");
}

// Solves L x = rhs for t right-hand sides produced chunk by chunk and stores
// the results node-major in `out`.
template <typename FillRhs>
void solve_rows(const LaplacianSolver& solver, std::size_t t, double tol, FillRhs fill,
                NodeCoordinates& out) {
  const std::size_t n = solver.n();
  out.n = n;
  out.t = t;
  out.x.assign(n * t, 0.0);
  std::vector<double> rhs, sol;
  for (std::size_t j0 = 0; j0 < t; j0 += kSketchChunk) {
    const std::size_t c = std::min(kSketchChunk, t - j0);
    rhs.assign(n * c, 0.0);
    sol.resize(n * c);
    fill(j0, c, rhs);
    solver.solve_block(rhs.data(), sol.data(), c, tol);
    for (std::size_t i = 0; i < n; ++i)
      std::copy_n(sol.data() + i * c, c, out.x.data() + i * t + j0);
  }
}

}  // namespace

SolverTolerance solver_tolerance(std::size_t n, double beta, double delta) {
  check_unit_interval(beta, "beta");
  check_unit_interval(delta, "delta");
  if (n < 2) throw InvalidArgument("solver tolerance needs n >= 2");
  const double nd = double(n);
  const double v = delta / (3.0 * nd) *
                   std::sqrt(6.0 * (1.0 - beta) / (nd * (nd * nd - 1.0) * (1.0 + beta)));
  if (v < kSolverTolFloor) return {kSolverTolFloor, true};
  return {v, false};
}

double NodeCoordinates::query(NodeId u, NodeId v) const {
  if (u == v) throw InvalidArgument("pair needs two distinct nodes");
  if (u >= n || v >= n) throw InvalidArgument("node id out of range");
  return kernels::active().sqdist(coords(u), coords(v), t);
}

ResistanceSketch build_resistance_sketch(const Graph& g, const LaplacianSolver& solver,
                                         double epsilon, std::uint64_t seed, double c_jl,
                                         double solver_tol) {
  check_unit_interval(epsilon, "epsilon");
  const double half = epsilon / 2.0;
  if (!(solver_tol > 0.0)) solver_tol = solver_tolerance(g.n(), half, half).value;
  const std::size_t t = jl_rows(g.n(), half, c_jl);
  const SignProjection q(t, g.m(), seed);
  const auto edges = g.edges();
  ResistanceSketch s;
  solve_rows(
      solver, t, solver_tol,
      [&](std::size_t j0, std::size_t c, std::vector<double>& rhs) {
        for (std::size_t ei = 0; ei < edges.size(); ++ei) {
          const Edge& e = edges[ei];
          for (std::size_t jj = 0; jj < c; ++jj) {
            const double w = q.entry(j0 + jj, ei);
            rhs[std::size_t(e.u) * c + jj] += w;
            rhs[std::size_t(e.v) * c + jj] -= w;
          }
        }
      },
      s);
  s.seed = seed;
  s.epsilon = epsilon;
  s.solver_tol = solver_tol;
  return s;
}

ResistanceSketch build_resistance_sketch(const Graph& g, double epsilon, std::uint64_t seed,
                                         double c_jl, double solver_tol) {
  const LaplacianSolver solver(g);
  return build_resistance_sketch(g, solver, epsilon, seed, c_jl, solver_tol);
}

double query_resistance(const ResistanceSketch& s, NodeId u, NodeId v) { return s.query(u, v); }

EmbeddingSketch embed_nodes(const LaplacianSolver& solver, double beta, double solver_tol,
                            std::uint64_t seed, double c_jl) {
  check_unit_interval(beta, "beta");
  if (!(solver_tol > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  const std::size_t n = solver.n();
  const std::size_t t = jl_rows(n, beta, c_jl);
  const SignProjection q(t, n, seed);
  EmbeddingSketch s;
  solve_rows(
      solver, t, solver_tol,
      [&](std::size_t j0, std::size_t c, std::vector<double>& rhs) {
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t jj = 0; jj < c; ++jj) rhs[i * c + jj] = q.entry(j0 + jj, i);
      },
      s);
  s.seed = seed;
  s.beta = beta;
  s.solver_tol = solver_tol;
  s.c_jl = c_jl;
  return s;
}

EmbeddingSketch embed_nodes(const Graph& g, double beta, double solver_tol, std::uint64_t seed,
                            double c_jl) {
  const LaplacianSolver solver(g);
  return embed_nodes(solver, beta, solver_tol, seed, c_jl);
}

double query_biharmonic(const EmbeddingSketch& s, NodeId u, NodeId v) { return s.query(u, v); }

EmbeddingUpdate update_embedding(EmbeddingSketch& s, LaplacianSolver& solver, Edge e,
                                 double solver_tol0, std::span<const NodeId> columns) {
  if (e.u == e.v || e.v >= s.n) throw InvalidArgument("invalid edge");
  if (solver.n() != s.n) throw InvalidArgument("solver and sketch disagree on n");
  EmbeddingUpdate up;
  std::vector<double> b(s.n, 0.0);
  b[e.u] = 1.0;
  b[e.v] = -1.0;
  up.y = solver.solve(b, solver_tol0, &up.stats);
  up.denominator = 1.0 + up.y[e.u] - up.y[e.v];
  if (!(up.denominator > 0.0))
    throw InvalidArgument("non-positive update denominator; embedding state is corrupt");

  const SignProjection q(s.t, s.n, s.seed);
  std::vector<double> qy(s.t);
  q.multiply(up.y, qy);
  const auto& k = kernels::active();
  auto touch = [&](NodeId i) { k.axpy(-up.y[i] / up.denominator, qy.data(), s.coords(i), s.t); };
  if (columns.empty()) {
    for (NodeId i = 0; i < s.n; ++i) touch(i);
  } else {
    for (NodeId i : columns) touch(i);
  }
  solver.add_edge(e);
  return up;
}

namespace {

constexpr char kMagic[8] = {'K', 'O', 'P', 'T', 'E', 'M', 'B', '1'};

struct CacheHeader {
  char magic[8];
  std::uint64_t fingerprint, n, t, seed;
  double beta, solver_tol, c_jl;
};

}  // namespace

void save_embedding(const std::filesystem::path& path, const EmbeddingSketch& s,
                    std::uint64_t fingerprint) {
  CacheHeader h{};
  std::memcpy(h.magic, kMagic, sizeof kMagic);
  h.fingerprint = fingerprint;
  h.n = s.n;
  h.t = s.t;
  h.seed = s.seed;
  h.beta = s.beta;
  h.solver_tol = s.solver_tol;
  h.c_jl = s.c_jl;
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out.write(reinterpret_cast<const char*>(&h), sizeof h);
    out.write(reinterpret_cast<const char*>(s.x.data()), std::streamsize(s.x.size() * sizeof(double)));
    if (!out) throw std::runtime_error("short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::optional<EmbeddingSketch> load_embedding(const std::filesystem::path& path,
                                              std::uint64_t fingerprint, std::size_t n,
                                              double beta, double solver_tol,
                                              std::uint64_t seed, double c_jl) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  CacheHeader h{};
  in.read(reinterpret_cast<char*>(&h), sizeof h);
  if (!in || std::memcmp(h.magic, kMagic, sizeof kMagic) != 0) return std::nullopt;
  if (h.fingerprint != fingerprint || h.n != n || h.seed != seed || h.beta != beta ||
      h.solver_tol != solver_tol || h.c_jl != c_jl || h.t != jl_rows(n, beta, c_jl))
    return std::nullopt;
  EmbeddingSketch s;
  s.n = h.n;
  s.t = h.t;
  s.seed = h.seed;
  s.beta = h.beta;
  s.solver_tol = h.solver_tol;
  s.c_jl = h.c_jl;
  s.x.resize(s.n * s.t);
  in.read(reinterpret_cast<char*>(s.x.data()), std::streamsize(s.x.size() * sizeof(double)));
  if (!in) return std::nullopt;
  return s;
}

std::filesystem::path embedding_cache_path(const std::filesystem::path& dir,
                                           std::uint64_t fingerprint, double beta,
                                           double solver_tol, std::uint64_t seed, double c_jl) {
  std::ostringstream name;
  name << "emb_" << std::hex << fingerprint << '_' << seed << std::dec << '_' << beta << '_'
       << solver_tol << '_' << c_jl << ".bin";
  return dir / name.str();
}

}  // namespace kopt

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
#include <vector>

#include "doctest.h"
#include "kopt/error.hpp"
#include "kopt/linalg.hpp"
#include "oracles.hpp"

using kopt::Edge;
using kopt::Graph;
using kopt::NodeId;
namespace gen = kopt::generators;

namespace {

double max_abs(const Eigen::MatrixXd& a) { return a.cwiseAbs().maxCoeff(); }

std::vector<Edge> non_edges(const Graph& g) {
  std::vector<Edge> out;
  for (NodeId u = 0; u < g.n(); ++u)
    for (NodeId v = u + 1; v < g.n(); ++v)
      if (!g.has_edge(u, v)) out.emplace_back(u, v);
  return out;
}

double l_norm(const Eigen::MatrixXd& l, const Eigen::VectorXd& x) {
  return std::sqrt(std::max(0.0, x.dot(l * x)));
}

}  // namespace

TEST_CASE("pseudoinverse of the three-node path") {
  const auto s = kopt::pseudo_inverse(gen::path(3));
  Eigen::Matrix3d want;
  want << 5, -1, -4, -1, 2, -1, -4, -1, 5;
  want /= 9.0;
  CHECK(max_abs(s.lp - want) < 1e-12);
  CHECK(max_abs(s.lp - oracle::pinv(gen::path(3))) < 1e-12);
}

TEST_CASE("pseudoinverse of the triangle") {
  const auto s = kopt::pseudo_inverse(gen::complete(3));
  const Eigen::MatrixXd want = (3.0 * Eigen::MatrixXd::Identity(3, 3) - Eigen::MatrixXd::Ones(3, 3)) / 9.0;
  CHECK(max_abs(s.lp - want) < 1e-12);
  const Eigen::MatrixXd l = kopt::laplacian_dense(gen::complete(3));
  CHECK(max_abs(l * s.lp * l - l) < 1e-12);
}

TEST_CASE("dense state invariants on random graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen::connected_gnp(40, 0.1, seed);
    const auto s = kopt::pseudo_inverse(g);
    const Eigen::MatrixXd l = kopt::laplacian_dense(g);
    CHECK(max_abs(s.lp - s.lp.transpose()) < 1e-9);
    CHECK(max_abs(s.lp2 - s.lp2.transpose()) < 1e-9);
    CHECK(s.lp.rowwise().sum().cwiseAbs().maxCoeff() < 1e-8);
    CHECK(s.lp2.rowwise().sum().cwiseAbs().maxCoeff() < 1e-8);
    CHECK(max_abs(s.lp2 - s.lp * s.lp) < 1e-7);
    CHECK(max_abs(l * s.lp * l - l) < 1e-7);
    CHECK(max_abs(s.lp - oracle::pinv(g)) < 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s.lp);
    CHECK(es.eigenvalues().minCoeff() > -1e-9);
  }
}

TEST_CASE("pseudoinverse guards") {
  CHECK_THROWS_AS(kopt::pseudo_inverse(gen::gnp(6, 0.0, 1)), kopt::DisconnectedGraph);
  CHECK_THROWS_AS(kopt::pseudo_inverse(gen::path(30), 20), kopt::SizeGuardExceeded);
}

TEST_CASE("rank-1 update turns the path into the triangle") {
  auto s = kopt::pseudo_inverse(gen::path(3));
  const double before = s.lp.trace();
  const double den = kopt::sm_update(s, {0, 2});
  CHECK(den == doctest::Approx(3.0));
  const auto k3 = kopt::pseudo_inverse(gen::complete(3));
  CHECK(max_abs(s.lp - k3.lp) < 1e-12);
  CHECK(max_abs(s.lp2 - k3.lp * k3.lp) < 1e-12);
  CHECK(s.lp.trace() < before);
  CHECK(s.graph.m() == 3);
  CHECK_THROWS_AS(kopt::sm_update(s, {0, 1}), kopt::InvalidArgument);
}

TEST_CASE("rank-1 update matches a fresh pseudoinverse for every non-edge") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = gen::connected_gnp(15, 0.25, seed);
    const auto base = kopt::pseudo_inverse(g);
    for (const Edge& e : non_edges(g)) {
      auto s = base;
      kopt::sm_update(s, e);
      const auto fresh = kopt::pseudo_inverse(g.with_edge(e));
      CHECK(max_abs(s.lp - fresh.lp) < 1e-8);
      CHECK(max_abs(s.lp2 - fresh.lp2) < 1e-7);
    }
  }
}

TEST_CASE("sequential updates stay close to recomputation") {
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Graph g = gen::connected_gnp(15, 0.2, seed + 100);
    auto s = kopt::pseudo_inverse(g);
    for (int step = 0; step < 5; ++step) {
      const auto cand = non_edges(g);
      const Edge e = cand[rng() % cand.size()];
      const double tr = s.lp.trace();
      kopt::sm_update_pinv2(s, e);
      kopt::sm_update_pinv(s, e);
      g = g.with_edge(e);
      CHECK(s.lp.trace() < tr);
    }
    const Eigen::MatrixXd lp = oracle::pinv(g);
    CHECK(max_abs(s.lp - lp) < 1e-6);
    CHECK(max_abs(s.lp2 - lp * lp) < 1e-6);
    CHECK(s.graph.fingerprint() == g.fingerprint());
  }
}

TEST_CASE("solver: zero right-hand side") {
  const kopt::LaplacianSolver solver(gen::path(5));
  const std::vector<double> b(5, 0.0);
  kopt::SolveStats st;
  const auto x = solver.solve(b, 1e-6, &st);
  for (double v : x) CHECK(v == 0.0);
  CHECK(st.iterations == 0);
  // Constant columns project to zero up to round-off.
  const std::vector<double> ones(5, 0.1 / 3.0);
  const auto y = solver.solve(ones, 1e-10);
  for (double v : y) CHECK(v == 0.0);
}

TEST_CASE("solver: path resistance") {
  const std::vector<double> b{1.0, 0.0, -1.0};
  const auto x = kopt::lap_solve(gen::path(3), b, 1e-10);
  CHECK(x[0] - x[2] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(x[0] + x[1] + x[2]) < 1e-12);
}

TEST_CASE("solver meets the L-norm contract on graphs up to 200 nodes") {
  std::vector<Graph> graphs;
  for (std::uint64_t s = 0; s < 6; ++s) graphs.push_back(gen::connected_gnp(100, 0.06, s));
  graphs.push_back(gen::barabasi_albert(200, 2, 1));
  graphs.push_back(gen::grid(10, 20));
  graphs.push_back(gen::path(150));
  graphs.push_back(gen::watts_strogatz(200, 3, 0.05, 2));
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  for (const Graph& g : graphs) {
    const kopt::LaplacianSolver solver(g);
    const Eigen::MatrixXd l = oracle::laplacian(g);
    const Eigen::MatrixXd lp = oracle::pinv(g);
    for (double tol : {1e-2, 1e-6}) {
      Eigen::VectorXd b(Eigen::Index(g.n()));
      for (auto& v : b) v = normal(rng);
      b.array() -= b.mean();
      const auto x = solver.solve({b.data(), std::size_t(b.size())}, tol);
      const Eigen::VectorXd xs = Eigen::Map<const Eigen::VectorXd>(x.data(), b.size());
      const Eigen::VectorXd exact = lp * b;
      CHECK(l_norm(l, xs - exact) <= tol * l_norm(l, exact));
      CHECK(std::abs(xs.sum()) < 1e-8);
    }
  }
}

TEST_CASE("block solve agrees with column-by-column solves") {
  const Graph g = gen::connected_gnp(80, 0.08, 3);
  const kopt::LaplacianSolver solver(g);
  const std::size_t n = g.n(), c = 7;
  std::mt19937_64 rng(2);
  std::normal_distribution<double> normal;
  std::vector<double> b(n * c), x(n * c);
  for (double& v : b) v = normal(rng);
  solver.solve_block(b.data(), x.data(), c, 1e-10);
  for (std::size_t j = 0; j < c; ++j) {
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = b[i * c + j];
    const auto xj = solver.solve(col, 1e-10);
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i * c + j] == doctest::Approx(xj[i]).epsilon(1e-7));
  }
}

TEST_CASE("solver edge insertion matches a rebuilt solver") {
  const Graph g = gen::connected_gnp(60, 0.08, 8);
  kopt::LaplacianSolver grown(g);
  Graph h = g;
  for (const Edge& e : non_edges(g)) {
    if (h.m() >= g.m() + 3) break;
    if ((e.u * 7 + e.v) % 11 != 0) continue;
    grown.add_edge(e);
    h = h.with_edge(e);
  }
  const Eigen::MatrixXd lp = oracle::pinv(h);
  std::vector<double> b(h.n(), 0.0);
  b[1] = 1.0;
  b[40] = -1.0;
  const auto x = grown.solve(b, 1e-10);
  CHECK(x[1] - x[40] == doctest::Approx(oracle::resistance(lp, 1, 40)).epsilon(1e-8));
}

TEST_CASE("Lanczos finds lambda2") {
  for (std::uint64_t s = 0; s < 4; ++s) {
    const Graph g = gen::connected_gnp(90, 0.07, s);
    const double exact = oracle::eigenvalues(g)[1];
    CHECK(kopt::LaplacianSolver(g).lambda2_estimate() == doctest::Approx(exact).epsilon(1e-6));
  }
  CHECK(kopt::LaplacianSolver(gen::cycle(4)).lambda2_estimate() == doctest::Approx(2.0));
}

TEST_CASE("sign projection entries and determinism") {
  const kopt::SignProjection q(4, 37, 99);
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 37; ++i) CHECK(std::abs(q.entry(j, i)) == 0.5);
  const kopt::SignProjection again(4, 37, 99);
  const kopt::SignProjection other(4, 37, 100);
  int same = 0, differ = 0;
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t i = 0; i < 37; ++i) {
      same += q.entry(j, i) == again.entry(j, i);
      differ += q.entry(j, i) != other.entry(j, i);
    }
  CHECK(same == 4 * 37);
  CHECK(differ > 0);

  std::vector<double> y(37), out(4), row(37);
  for (std::size_t i = 0; i < 37; ++i) y[i] = double(i) - 3.0;
  q.multiply(y, out);
  for (std::size_t j = 0; j < 4; ++j) {
    q.row(j, row.data());
    double want = 0.0;
    for (std::size_t i = 0; i < 37; ++i) want += row[i] * y[i];
    CHECK(out[j] == doctest::Approx(want));
  }
}

TEST_CASE("sign projection is roughly balanced") {
  const kopt::SignProjection q(50, 1000, 1);
  int neg = 0;
  for (std::size_t j = 0; j < 50; ++j)
    for (std::size_t i = 0; i < 1000; ++i) neg += q.entry(j, i) < 0;
  CHECK(std::abs(neg - 25000) < 600);
}

TEST_CASE("sign projection preserves pairwise distances") {
  const std::size_t npts = 256, dim = 400;
  const double beta = 0.3;
  const std::size_t t = kopt::jl_rows(npts, 0.1);
  CHECK(t == std::size_t(std::ceil(std::log(256.0) / 0.01)));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> pts(npts, std::vector<double>(dim));
  for (auto& p : pts)
    for (double& v : p) v = normal(rng);
  const kopt::SignProjection q(t, dim, 17);
  std::vector<std::vector<double>> img(npts, std::vector<double>(t));
  for (std::size_t i = 0; i < npts; ++i) q.multiply(pts[i], img[i]);
  std::size_t good = 0, total = 0;
  for (std::size_t a = 0; a < npts; ++a)
    for (std::size_t b = a + 1; b < npts; ++b) {
      double d0 = 0.0, d1 = 0.0;
      for (std::size_t i = 0; i < dim; ++i) d0 += (pts[a][i] - pts[b][i]) * (pts[a][i] - pts[b][i]);
      for (std::size_t i = 0; i < t; ++i) d1 += (img[a][i] - img[b][i]) * (img[a][i] - img[b][i]);
      good += std::abs(d1 - d0) <= beta * d0;
      ++total;
    }
  CHECK(double(good) >= 0.99 * double(total));
}

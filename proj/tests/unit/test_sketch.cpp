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
#include <cmath>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "kopt/error.hpp"
#include "kopt/kirchhoff.hpp"
#include "kopt/sketch.hpp"
#include "oracles.hpp"

using kopt::Edge;
using kopt::Graph;
using kopt::NodeId;
namespace gen = kopt::generators;

namespace {

double rel(double got, double want) { return std::abs(got - want) / want; }

}  // namespace

TEST_CASE("solver tolerance formula") {
  const auto tol = kopt::solver_tolerance(3, 1.0 / 3.0, 1.0 / 3.0);
  CHECK(tol.value == doctest::Approx(std::sqrt(1.0 / 8.0) / 27.0));
  CHECK(tol.value == doctest::Approx(0.0131).epsilon(0.01));
  CHECK(!tol.floored);
  double prev = 1.0;
  for (std::size_t n : {2, 5, 10, 100, 1000, 10000}) {
    const double v = kopt::solver_tolerance(n, 0.1, 0.1).value;
    CHECK(v < prev);
    prev = v;
  }
  const auto big = kopt::solver_tolerance(1000000, 0.1, 0.1);
  CHECK(big.floored);
  CHECK(big.value == kopt::kSolverTolFloor);
  CHECK_THROWS_AS(kopt::solver_tolerance(10, 0.0, 0.1), kopt::InvalidArgument);
  CHECK_THROWS_AS(kopt::solver_tolerance(1, 0.5, 0.1), kopt::InvalidArgument);
}

TEST_CASE("resistance sketch on the path") {
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = kopt::build_resistance_sketch(gen::path(3), 0.1, seed);
    CHECK(s.t == std::size_t(std::ceil(std::log(3.0) / 0.0025)));
    const double r02 = kopt::query_resistance(s, 0, 2);
    CHECK(r02 == kopt::query_resistance(s, 2, 0));
    inside += r02 >= 1.8 && r02 <= 2.2;
    CHECK(kopt::query_resistance(s, 0, 1) == doctest::Approx(1.0).epsilon(0.35));
  }
  CHECK(inside >= 16);
  CHECK_THROWS_AS(kopt::query_resistance(kopt::build_resistance_sketch(gen::path(3), 0.1, 1), 1, 1),
                  kopt::InvalidArgument);
}

TEST_CASE("resistance sketch on K4") {
  int inside = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = kopt::build_resistance_sketch(gen::complete(4), 0.5, seed);
    for (NodeId u = 0; u < 4; ++u)
      for (NodeId v = u + 1; v < 4; ++v) {
        inside += rel(kopt::query_resistance(s, u, v), 0.5) <= 0.5;
        ++total;
      }
  }
  CHECK(inside >= total * 8 / 10);
}

TEST_CASE("sketches are deterministic given the seed") {
  const Graph g = gen::connected_gnp(40, 0.1, 3);
  const auto a = kopt::build_resistance_sketch(g, 0.3, 77);
  const auto b = kopt::build_resistance_sketch(g, 0.3, 77);
  CHECK(a.x == b.x);
  const auto c = kopt::embed_nodes(g, 0.3, 1e-8, 5);
  const auto d = kopt::embed_nodes(g, 0.3, 1e-8, 5);
  CHECK(c.x == d.x);
  const auto e = kopt::embed_nodes(g, 0.3, 1e-8, 6);
  CHECK(c.x != e.x);
}

TEST_CASE("resistance sketch accuracy on a 100-node graph") {
  const Graph g = gen::connected_gnp(100, 0.06, 12);
  const Eigen::MatrixXd lp = oracle::pinv(g);
  const auto cand = kopt::candidate_edges(g);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto s = kopt::build_resistance_sketch(g, 0.2, seed);
    std::size_t good = 0;
    for (const Edge& e : cand)
      good += rel(kopt::query_resistance(s, e.u, e.v), oracle::resistance(lp, int(e.u), int(e.v))) <= 0.2;
    CHECK(double(good) >= 0.95 * double(cand.size()));
  }
}

TEST_CASE("embedding of the path") {
  const double beta = 0.2, delta = 0.2;
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = kopt::embed_nodes(gen::path(3), beta, kopt::solver_tolerance(3, beta, delta).value, seed);
    inside += rel(kopt::query_biharmonic(s, 0, 2), 2.0) <= beta + delta;
    // Columns of a solve output are centered, so shifting all columns does
    // not change distances.
    auto shifted = s;
    for (NodeId i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < s.t; ++j) shifted.coords(i)[j] += 3.5 + double(j);
    CHECK(kopt::query_biharmonic(shifted, 0, 2) == doctest::Approx(kopt::query_biharmonic(s, 0, 2)));
  }
  CHECK(inside >= 18);
}

TEST_CASE("embedding accuracy on a 200-node graph") {
  const Graph g = gen::connected_gnp(200, 0.05, 21);
  const Eigen::MatrixXd lp = oracle::pinv(g);
  const double beta = 0.2, delta = 0.2;
  const double tol = kopt::solver_tolerance(g.n(), beta, delta).value;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto s = kopt::embed_nodes(g, beta, tol, seed);
    double worst = 0.0;
    std::size_t good = 0, total = 0;
    for (NodeId u = 0; u < g.n(); ++u)
      for (NodeId v = u + 1; v < g.n(); ++v) {
        const double err = rel(kopt::query_biharmonic(s, u, v), oracle::biharmonic(lp, int(u), int(v)));
        worst = std::max(worst, err);
        good += err <= beta;
        ++total;
      }
    MESSAGE("seed " << seed << " worst relative error " << worst);
    CHECK(worst <= 0.4);
    CHECK(double(good) >= 0.95 * double(total));
  }
}

TEST_CASE("K4 biharmonic distances are nearly equal") {
  const auto s = kopt::embed_nodes(gen::complete(4), 0.2, 1e-10, 3);
  double lo = 1e300, hi = 0.0;
  for (NodeId u = 0; u < 4; ++u)
    for (NodeId v = u + 1; v < 4; ++v) {
      lo = std::min(lo, kopt::query_biharmonic(s, u, v));
      hi = std::max(hi, kopt::query_biharmonic(s, u, v));
    }
  CHECK((hi - lo) / lo <= 2.0 * (0.2 + 0.2));
}

TEST_CASE("embedding update equals a fresh embedding with the same projection") {
  const double beta = 0.2;
  auto s = kopt::embed_nodes(gen::path(3), beta, 1e-12, 4);
  kopt::LaplacianSolver solver(gen::path(3));
  const double before = kopt::query_biharmonic(s, 0, 2);
  const auto up = kopt::update_embedding(s, solver, {0, 2}, 1e-12);
  CHECK(up.denominator == doctest::Approx(3.0));
  const auto fresh = kopt::embed_nodes(gen::complete(3), beta, 1e-12, 4);
  for (NodeId u = 0; u < 3; ++u)
    for (NodeId v = u + 1; v < 3; ++v)
      CHECK(kopt::query_biharmonic(s, u, v) == doctest::Approx(kopt::query_biharmonic(fresh, u, v)).epsilon(1e-9));
  CHECK(kopt::query_biharmonic(s, 0, 2) < before);
}

TEST_CASE("update tolerance barely matters") {
  const Graph g = gen::connected_gnp(50, 0.1, 2);
  auto a = kopt::embed_nodes(g, 0.3, 1e-10, 9);
  auto b = a;
  kopt::LaplacianSolver sa(g), sb(g);
  const Edge e = kopt::candidate_edges(g)[17];
  const double before = kopt::query_biharmonic(a, e.u, e.v);
  kopt::update_embedding(a, sa, e, 1e-12);
  kopt::update_embedding(b, sb, e, 1e-8);
  double drift = 0.0;
  for (NodeId u = 0; u < g.n(); ++u)
    for (NodeId v = u + 1; v < g.n(); ++v)
      drift = std::max(drift, std::abs(kopt::query_biharmonic(a, u, v) - kopt::query_biharmonic(b, u, v)));
  CHECK(drift <= 1e-6);
  CHECK(kopt::query_biharmonic(a, e.u, e.v) < before);
}

TEST_CASE("ten chained updates track a fresh embedding") {
  Graph g = gen::connected_gnp(100, 0.05, 6);
  auto s = kopt::embed_nodes(g, 0.3, 1e-10, 12);
  kopt::LaplacianSolver solver(g);
  const auto cand = kopt::candidate_edges(g);
  for (int i = 0; i < 10; ++i) {
    const Edge e = cand[std::size_t(i) * 397 % cand.size()];
    kopt::update_embedding(s, solver, e, 1e-8);
    g = g.with_edge(e);
  }
  const auto fresh = kopt::embed_nodes(g, 0.3, 1e-10, 12);
  double worst = 0.0;
  for (NodeId u = 0; u < g.n(); ++u)
    for (NodeId v = u + 1; v < g.n(); ++v)
      worst = std::max(worst, rel(kopt::query_biharmonic(s, u, v), kopt::query_biharmonic(fresh, u, v)));
  CHECK(worst <= 0.05);
}

TEST_CASE("partial column updates touch only the listed nodes") {
  const Graph g = gen::connected_gnp(30, 0.15, 1);
  auto s = kopt::embed_nodes(g, 0.3, 1e-10, 2);
  const auto orig = s;
  kopt::LaplacianSolver solver(g);
  const std::vector<NodeId> cols{0, 5, 7};
  const Edge e = kopt::candidate_edges(g).front();
  kopt::update_embedding(s, solver, e, 1e-10, cols);
  for (NodeId i = 0; i < g.n(); ++i) {
    const bool listed = std::find(cols.begin(), cols.end(), i) != cols.end();
    const bool same = std::equal(s.coords(i), s.coords(i) + s.t, orig.coords(i));
    if (!listed) CHECK(same);
  }
}

TEST_CASE("relabelled graphs give consistent estimates") {
  const Graph g = gen::connected_gnp(60, 0.08, 4);
  std::vector<Edge> flipped;
  const NodeId n = NodeId(g.n());
  for (const Edge& e : g.edges()) flipped.emplace_back(n - 1 - e.u, n - 1 - e.v);
  const Graph h = Graph::from_edges(g.n(), flipped);
  const Eigen::MatrixXd lp = oracle::pinv(g);
  const auto sg = kopt::embed_nodes(g, 0.2, 1e-10, 3);
  const auto sh = kopt::embed_nodes(h, 0.2, 1e-10, 3);
  std::size_t good = 0, total = 0;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) {
      const double exact = oracle::biharmonic(lp, int(u), int(v));
      const double a = kopt::query_biharmonic(sg, u, v);
      const double b = kopt::query_biharmonic(sh, n - 1 - u, n - 1 - v);
      good += rel(a, exact) <= 0.4 && rel(b, exact) <= 0.4;
      ++total;
    }
  CHECK(double(good) >= 0.99 * double(total));
}

TEST_CASE("embedding cache round trip") {
  const Graph g = gen::connected_gnp(30, 0.15, 8);
  const auto s = kopt::embed_nodes(g, 0.3, 1e-9, 4);
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = kopt::embedding_cache_path(dir, g.fingerprint(), 0.3, 1e-9, 4, 1.0);
  kopt::save_embedding(path, s, g.fingerprint());
  const auto back = kopt::load_embedding(path, g.fingerprint(), g.n(), 0.3, 1e-9, 4, 1.0);
  REQUIRE(back.has_value());
  CHECK(back->x == s.x);
  CHECK(!kopt::load_embedding(path, g.fingerprint() + 1, g.n(), 0.3, 1e-9, 4, 1.0).has_value());
  CHECK(!kopt::load_embedding(path, g.fingerprint(), g.n(), 0.3, 1e-9, 5, 1.0).has_value());
  std::filesystem::remove(path);
  CHECK(!kopt::load_embedding(path, g.fingerprint(), g.n(), 0.3, 1e-9, 4, 1.0).has_value());
}

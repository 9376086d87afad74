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
#include <vector>

#include "doctest.h"
#include "kopt/error.hpp"
#include "kopt/kirchhoff.hpp"
#include "oracles.hpp"

using kopt::Edge;
using kopt::Graph;
using kopt::NodeId;
namespace gen = kopt::generators;

TEST_CASE("Kirchhoff index closed forms") {
  for (std::size_t n = 3; n <= 12; ++n) {
    const double want = double(n) * double(n * n - 1) / 6.0;
    CHECK(kopt::kirchhoff_index(kopt::pseudo_inverse(gen::path(n))) == doctest::Approx(want).epsilon(1e-12));
    CHECK(oracle::kirchhoff_pairs(gen::path(n)) == doctest::Approx(want).epsilon(1e-12));
  }
  for (std::size_t n = 3; n <= 10; ++n)
    CHECK(kopt::kirchhoff_index(kopt::pseudo_inverse(gen::complete(n))) ==
          doctest::Approx(double(n - 1)).epsilon(1e-12));
  CHECK(kopt::kirchhoff_index(kopt::pseudo_inverse(gen::path(3))) == doctest::Approx(4.0));
  CHECK(kopt::kirchhoff_index(kopt::pseudo_inverse(gen::complete(3))) == doctest::Approx(2.0));
}

TEST_CASE("three routes to the Kirchhoff index agree") {
  std::vector<Graph> graphs{gen::grid(6, 7), gen::barabasi_albert(200, 2, 4), gen::cycle(50)};
  for (std::uint64_t s = 0; s < 4; ++s) graphs.push_back(gen::connected_gnp(60, 0.08, s));
  for (const Graph& g : graphs) {
    const double trace = kopt::kirchhoff_index(kopt::pseudo_inverse(g));
    double spectral = 0.0;
    const auto lam = oracle::eigenvalues(g);
    for (std::size_t i = 1; i < lam.size(); ++i) spectral += double(g.n()) / lam[i];
    CHECK(trace == doctest::Approx(spectral).epsilon(1e-7));
    CHECK(trace == doctest::Approx(oracle::kirchhoff_pairs(g)).epsilon(1e-7));
  }
}

TEST_CASE("effective resistance examples") {
  const auto p3 = kopt::pseudo_inverse(gen::path(3));
  CHECK(kopt::effective_resistance(p3, 0, 2) == doctest::Approx(2.0));
  CHECK(kopt::effective_resistance(p3, 0, 1) == doctest::Approx(1.0));
  CHECK(kopt::effective_resistance(p3, 2, 0) == kopt::effective_resistance(p3, 0, 2));
  CHECK_THROWS_AS(kopt::effective_resistance(p3, 1, 1), kopt::InvalidArgument);
  for (std::size_t n = 3; n <= 8; ++n) {
    const auto kn = kopt::pseudo_inverse(gen::complete(n));
    CHECK(kopt::effective_resistance(kn, 0, NodeId(n - 1)) == doctest::Approx(2.0 / double(n)));
  }
  // Triangle 0-1-2 with pendant 3 hanging off node 0.
  const std::vector<Edge> e{{0, 1}, {1, 2}, {0, 2}, {0, 3}};
  const auto s = kopt::pseudo_inverse(Graph::from_edges(4, e));
  CHECK(kopt::effective_resistance(s, 3, 1) == doctest::Approx(1.0 + 2.0 / 3.0));
}

TEST_CASE("effective resistance is a metric on small graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Graph g = gen::connected_gnp(8, 0.35, seed);
    const auto s = kopt::pseudo_inverse(g);
    for (NodeId a = 0; a < 8; ++a)
      for (NodeId b = 0; b < 8; ++b)
        for (NodeId c = 0; c < 8; ++c) {
          if (a == b || b == c || a == c) continue;
          CHECK(kopt::effective_resistance(s, a, c) <=
                kopt::effective_resistance(s, a, b) + kopt::effective_resistance(s, b, c) + 1e-12);
        }
  }
}

TEST_CASE("biharmonic distance examples") {
  const auto p3 = kopt::pseudo_inverse(gen::path(3));
  CHECK(kopt::biharmonic_sq(p3, 0, 2) == doctest::Approx(2.0));
  const Eigen::MatrixXd lp = oracle::pinv(gen::path(3));
  CHECK(kopt::biharmonic_sq(p3, 0, 1) == doctest::Approx(oracle::biharmonic(lp, 0, 1)));
  CHECK(kopt::biharmonic_sq(p3, 0, 1) == doctest::Approx(2.0 / 3.0));
  const Graph g = gen::connected_gnp(30, 0.1, 1);
  const auto s = kopt::pseudo_inverse(g);
  for (NodeId u = 0; u < 30; ++u)
    for (NodeId v = u + 1; v < 30; ++v) CHECK(kopt::biharmonic_sq(s, u, v) > 0.0);
}

TEST_CASE("marginal decrease examples") {
  const auto p3 = kopt::pseudo_inverse(gen::path(3));
  CHECK(kopt::marginal_decrease(p3, {0, 2}) == doctest::Approx(2.0));
  CHECK(kopt::gradient(p3, {0, 2}) == doctest::Approx(2.0));
  CHECK(3.0 * kopt::gradient(p3, {0, 2}) == doctest::Approx(6.0));
  CHECK_THROWS_AS(kopt::marginal_decrease(p3, {0, 1}), kopt::InvalidArgument);
  CHECK_THROWS_AS(kopt::gradient(p3, {1, 2}), kopt::InvalidArgument);
}

TEST_CASE("marginal decrease equals the from-scratch drop") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = gen::connected_gnp(12, 0.3, seed);
    const auto s = kopt::pseudo_inverse(g);
    const double k0 = oracle::kirchhoff_pairs(g);
    for (const Edge& e : kopt::candidate_edges(g)) {
      const double delta = kopt::marginal_decrease(s, e);
      const double drop = k0 - oracle::kirchhoff_pairs(g.with_edge(e));
      CHECK(std::abs(delta - drop) <= 1e-8 * drop);
      CHECK(delta > 0.0);
      CHECK(delta <= double(g.n()) * kopt::gradient(s, e) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("candidate edges are exactly the non-edges") {
  const Graph g = gen::connected_gnp(20, 0.2, 9);
  const auto q = kopt::candidate_edges(g);
  CHECK(q.size() == g.candidate_count());
  for (const Edge& e : q) CHECK(!g.has_edge(e.u, e.v));
  CHECK(std::is_sorted(q.begin(), q.end()));
}

TEST_CASE("spectral bound examples") {
  const auto p3 = kopt::spectral_bounds(gen::path(3));
  CHECK(p3.lambda2 == doctest::Approx(1.0));
  CHECK(p3.gamma_lb == doctest::Approx(1.0 / 9.0));
  CHECK(p3.alpha_ub == doctest::Approx(8.0 / 9.0));
  CHECK(p3.ratio_lb == doctest::Approx(0.10579).epsilon(1e-4));
  const auto k5 = kopt::spectral_bounds(gen::complete(5));
  CHECK(k5.gamma_lb == doctest::Approx(1.0));
  CHECK(k5.alpha_ub == doctest::Approx(0.0));
  CHECK(k5.ratio_lb == doctest::Approx(1.0));
  const auto c4 = kopt::spectral_bounds(gen::cycle(4));
  CHECK(c4.lambda2 == doctest::Approx(2.0));
  CHECK(c4.gamma_lb == doctest::Approx(0.25));
  CHECK(c4.alpha_ub == doctest::Approx(0.75));
  const auto est = kopt::spectral_bounds_estimate(gen::cycle(4));
  CHECK(est.estimated);
  CHECK(est.lambda2 == doctest::Approx(2.0));
  CHECK_THROWS_AS(kopt::spectral_bounds(gen::path(40), 10), kopt::SizeGuardExceeded);
}

TEST_CASE("exact ratios respect the spectral bounds") {
  std::vector<Graph> graphs{gen::path(4), gen::star(4), gen::cycle(5), gen::path(5), gen::star(5)};
  for (std::uint64_t s = 0; s < 6; ++s) {
    const Graph g = gen::connected_gnp(5, 0.5, s);
    if (g.candidate_count() > 0) graphs.push_back(g);
  }
  for (const Graph& g : graphs) {
    const auto exact = kopt::exact_ratios(g);
    const auto bound = kopt::spectral_bounds(g);
    CHECK(exact.gamma >= bound.gamma_lb - 1e-12);
    CHECK(exact.alpha <= bound.alpha_ub + 1e-12);
    CHECK(exact.gamma <= 1.0 + 1e-12);
  }
  CHECK_THROWS_AS(kopt::exact_ratios(gen::path(7)), kopt::SizeGuardExceeded);
}

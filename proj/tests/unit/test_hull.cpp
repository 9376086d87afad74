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
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "kopt/error.hpp"
#include "kopt/hull.hpp"
#include "kopt/linalg.hpp"

using kopt::NodeId;
using kopt::PointCloud;

namespace {

PointCloud gaussian_cloud(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> c(n * dim);
  for (double& v : c) v = normal(rng);
  return PointCloud::owning(std::move(c), dim);
}

double sq(const PointCloud& c, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (std::size_t i = 0; i < c.dim(); ++i) {
    const double d = c.point(a)[i] - c.point(b)[i];
    s += d * d;
  }
  return s;
}

double diameter_sq(const PointCloud& c, const std::vector<std::size_t>& idx) {
  double best = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) best = std::max(best, sq(c, idx[i], idx[j]));
  return best;
}

std::vector<std::size_t> all_indices(const PointCloud& c) {
  std::vector<std::size_t> v(c.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

// Andrew's monotone chain; strict hull vertices only.
std::set<std::size_t> hull_2d(const PointCloud& c) {
  std::vector<std::size_t> idx = all_indices(c);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return std::make_pair(c.point(a)[0], c.point(a)[1]) < std::make_pair(c.point(b)[0], c.point(b)[1]);
  });
  auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    return (c.point(a)[0] - c.point(o)[0]) * (c.point(b)[1] - c.point(o)[1]) -
           (c.point(a)[1] - c.point(o)[1]) * (c.point(b)[0] - c.point(o)[0]);
  };
  std::vector<std::size_t> h(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
    h[k++] = idx[i];
  }
  for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], idx[i]) <= 0) --k;
    h[k++] = idx[i];
  }
  return {h.begin(), h.begin() + std::ptrdiff_t(k - 1)};
}

}  // namespace

TEST_CASE("square with its center keeps the corners") {
  const PointCloud c = PointCloud::owning({0, 0, 1, 0, 1, 1, 0, 1, 0.5, 0.5}, 2);
  const auto h = kopt::approx_convex_hull(c, 0.01);
  std::set<std::size_t> m(h.members.begin(), h.members.end());
  CHECK(m == std::set<std::size_t>{0, 1, 2, 3});
  CHECK(!h.capped);
}

TEST_CASE("collinear points keep the endpoints") {
  std::vector<double> coords;
  for (int i = 0; i < 20; ++i) {
    const double t = double((i * 7) % 20);
    coords.insert(coords.end(), {t, 2.0 * t, -t});
  }
  const PointCloud c = PointCloud::owning(coords, 3);
  const auto h = kopt::approx_convex_hull(c, 0.01);
  std::set<NodeId> ids;
  for (NodeId id : h.ids(c)) ids.insert(id);
  // t = 0 at i = 0, t = 19 at i = 17.
  CHECK(ids == std::set<NodeId>{0, 17});
}

TEST_CASE("singleton and duplicate clouds") {
  const PointCloud one = PointCloud::owning({1.0, 2.0}, 2);
  CHECK(kopt::approx_convex_hull(one, 0.1).members.size() == 1);
  const PointCloud same = PointCloud::owning({1.0, 2.0, 1.0, 2.0, 1.0, 2.0}, 2);
  CHECK(kopt::approx_convex_hull(same, 0.1).members.size() == 1);
  CHECK_THROWS_AS(kopt::approx_convex_hull(one, 0.0), kopt::InvalidArgument);
  CHECK_THROWS_AS(kopt::approx_convex_hull(one, 1.0), kopt::InvalidArgument);
}

TEST_CASE("hull diameter is close to the cloud diameter") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const PointCloud c = gaussian_cloud(500, 20, seed);
    const double mu = 0.01;
    const auto h = kopt::approx_convex_hull(c, mu);
    CHECK(diameter_sq(c, h.members) >= (1.0 - 8.0 * mu) * diameter_sq(c, all_indices(c)));
    CHECK(h.d_est * h.d_est <= diameter_sq(c, all_indices(c)) + 1e-12);
  }
}

TEST_CASE("every point lies within tolerance of the member hull") {
  const PointCloud c = gaussian_cloud(300, 6, 4);
  const auto h = kopt::approx_convex_hull(c, 0.05);
  for (std::size_t k = 0; k < c.size(); ++k) {
    const auto d = kopt::distance_to_hull(c.point(k), h, c, 1e-9);
    CHECK(d.distance <= h.hull_tol + 1e-6 * h.d_est);
  }
  CHECK(h.members.size() < c.size());
}

TEST_CASE("small mu recovers the exact planar hull") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const PointCloud c = gaussian_cloud(60, 2, seed + 50);
    const auto h = kopt::approx_convex_hull(c, 1e-4);
    const std::set<std::size_t> got(h.members.begin(), h.members.end());
    CHECK(got == hull_2d(c));
  }
}

TEST_CASE("diameter is attained on hull vertices") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PointCloud c = gaussian_cloud(12, 2, seed + 200);
    const auto hv = hull_2d(c);
    const std::vector<std::size_t> v(hv.begin(), hv.end());
    CHECK(diameter_sq(c, v) == doctest::Approx(diameter_sq(c, all_indices(c))).epsilon(1e-14));
  }
}

TEST_CASE("distance to hull examples") {
  const PointCloud c = PointCloud::owning({0, 0, 4, 0, 0, 4, 1, 1, 2, 3}, 2);
  kopt::ExtremeSubset tri;
  tri.members = {0, 1, 2};
  tri.d_est = 4.0 * std::sqrt(2.0);
  CHECK(kopt::distance_to_hull(c.point(3), tri, c, 1e-10).distance < 1e-6 * tri.d_est);
  CHECK(kopt::distance_to_hull(c.point(1), tri, c, 1e-10).distance < 1e-6 * tri.d_est);
  // (2, 3) against the hypotenuse x + y = 4: distance 1/sqrt(2).
  CHECK(kopt::distance_to_hull(c.point(4), tri, c, 1e-10).distance ==
        doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));

  const PointCloud seg = PointCloud::owning({0, 0, 3, 0, 1.7, 1.0}, 2);
  kopt::ExtremeSubset s;
  s.members = {0, 1};
  s.d_est = 3.0;
  const auto d = kopt::distance_to_hull(seg.point(2), s, seg, 1e-6 * 3.0);
  CHECK(std::abs(d.distance - 1.0) <= 1e-6);
  CHECK(d.lower <= d.distance);
}

TEST_CASE("farthest pair over the square") {
  const PointCloud c = PointCloud::owning({0, 0, 1, 0, 1, 1, 0, 1, 0.5, 0.5}, 2);
  const auto h = kopt::approx_convex_hull(c, 0.01);
  const auto diag = kopt::farthest_pair(c, h, nullptr);
  CHECK(diag.dist_sq == doctest::Approx(2.0));
  CHECK(diag.u == 0);
  CHECK(diag.v == 2);
  auto no_diag = [](NodeId u, NodeId v) { return (u == 0 && v == 2) || (u == 1 && v == 3); };
  const auto side = kopt::farthest_pair(c, h, no_diag);
  CHECK(side.dist_sq == doctest::Approx(1.0));
  CHECK(side.u == 0);
  CHECK(side.v == 1);
  CHECK_THROWS_AS(kopt::farthest_pair(c, h, [](NodeId, NodeId) { return true; }),
                  kopt::HullExhausted);
}

TEST_CASE("farthest pair on the embedded path") {
  const auto lp = kopt::pseudo_inverse_matrix(kopt::generators::path(3));
  std::vector<double> coords(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) coords[std::size_t(i * 3 + j)] = lp(j, i);
  const PointCloud c = PointCloud::owning(coords, 3);
  const auto h = kopt::approx_convex_hull(c, 0.01);
  const auto g = kopt::generators::path(3);
  const auto fp = kopt::farthest_pair(c, h, [&](NodeId u, NodeId v) { return g.has_edge(u, v); });
  CHECK(fp.u == 0);
  CHECK(fp.v == 2);
  CHECK(fp.dist_sq == doctest::Approx(2.0));
}

TEST_CASE("view clouds and member caps") {
  const PointCloud full = gaussian_cloud(200, 8, 9);
  std::vector<double> raw(full.point(0), full.point(0) + 200 * 8);
  std::vector<NodeId> ids;
  for (NodeId i = 0; i < 200; i += 2) ids.push_back(i);
  const PointCloud sub = PointCloud::view(raw.data(), 8, ids);
  const auto h = kopt::approx_convex_hull(sub, 0.01);
  for (NodeId id : h.ids(sub)) CHECK(id % 2 == 0);
  const auto again = kopt::approx_convex_hull(sub, 0.01);
  CHECK(again.members == h.members);
  kopt::HullOptions opts;
  opts.max_members = 5;
  const auto capped = kopt::approx_convex_hull(sub, 0.01, opts);
  CHECK(capped.members.size() == 5);
  CHECK(capped.capped);
  CHECK_THROWS_AS(PointCloud::view(raw.data(), 8, {1, 1}), kopt::InvalidArgument);
}

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

#include "kopt/error.hpp"
#include "kopt/graph.hpp"

namespace kopt::generators {
namespace {

double uniform(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

}  // namespace

Graph path(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph::from_edges(n, e);
}

Graph cycle(std::size_t n) {
  if (n < 3) throw InvalidArgument("cycle needs n >= 3");
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i) e.emplace_back(i, NodeId((i + 1) % n));
  return Graph::from_edges(n, e);
}

Graph star(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph::from_edges(n, e);
}

Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

Graph grid(std::size_t rows, std::size_t cols) {
  std::vector<Edge> e;
  auto id = [cols](std::size_t r, std::size_t c) { return NodeId(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph::from_edges(rows * cols, e);
}

Graph gnp(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (uniform(rng) < p) e.emplace_back(i, j);
  return Graph::from_edges(n, e);
}

Graph connected_gnp(std::size_t n, double p, std::uint64_t seed) {
  std::seed_seq seq{seed, std::uint64_t{0x9e3779b97f4a7c15ull}};
  std::mt19937_64 rng(seq);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Graph g = gnp(n, p, rng());
    if (is_connected(g)) return g;
  }
  throw DisconnectedGraph("no connected G(n, p) sample in 1000 draws");
}

Graph barabasi_albert(std::size_t n, std::size_t attach, std::uint64_t seed) {
  if (attach == 0 || n <= attach) throw InvalidArgument("need n > attach >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Edge> e;
  // Endpoint multiset: sampling uniformly from it is degree-proportional.
  std::vector<NodeId> ends;
  ends.reserve(2 * n * attach);
  const std::size_t core = attach + 1;
  for (NodeId i = 0; i < core; ++i)
    for (NodeId j = i + 1; j < core; ++j) {
      e.emplace_back(i, j);
      ends.push_back(i);
      ends.push_back(j);
    }
  std::vector<NodeId> picked;
  for (NodeId v = NodeId(core); v < n; ++v) {
    picked.clear();
    while (picked.size() < attach) {
      const NodeId t = ends[std::uniform_int_distribution<std::size_t>(0, ends.size() - 1)(rng)];
      if (std::find(picked.begin(), picked.end(), t) == picked.end()) picked.push_back(t);
    }
    for (NodeId t : picked) {
      e.emplace_back(t, v);
      ends.push_back(t);
      ends.push_back(v);
    }
  }
  return Graph::from_edges(n, e);
}

Graph watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed) {
  if (n < 2 * k + 2) throw InvalidArgument("watts_strogatz needs n >= 2k + 2");
  std::mt19937_64 rng(seed);
  std::set<Edge> es;
  for (NodeId i = 0; i < n; ++i)
    for (std::size_t j = 1; j <= k; ++j) es.emplace(i, NodeId((i + j) % n));
  std::vector<Edge> lattice(es.begin(), es.end());
  for (const Edge& old : lattice) {
    if (uniform(rng) >= p) continue;
    for (int tries = 0; tries < 32; ++tries) {
      const NodeId w = NodeId(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
      const Edge cand(old.u, w);
      if (w == old.u || es.count(cand)) continue;
      es.erase(old);
      es.insert(cand);
      break;
    }
  }
  std::vector<Edge> e(es.begin(), es.end());
  return largest_connected_component(Graph::from_edges(n, e));
}

Graph random_geometric(std::size_t n, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = uniform(rng);
    y[i] = uniform(rng);
  }
  std::vector<Edge> e;
  const double r2 = radius * radius;
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j], dy = y[i] - y[j];
      if (dx * dx + dy * dy <= r2) e.emplace_back(i, j);
    }
  return largest_connected_component(Graph::from_edges(n, e));
}

}  // namespace kopt::generators

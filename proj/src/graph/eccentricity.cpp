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
#include <limits>

#include "kopt/error.hpp"
#include "kopt/graph.hpp"

namespace kopt {
namespace {

constexpr std::size_t kAllPairsLimit = 10000;

// BFS into a caller-owned buffer; returns the largest distance reached, or -1
// when some node is unreachable.
std::int32_t sweep(const Graph& g, NodeId s, std::vector<std::int32_t>& dist,
                   std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.assign(1, s);
  dist[s] = 0;
  std::int32_t far = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        far = dist[w];
        queue.push_back(w);
      }
    }
  }
  return queue.size() == g.n() ? far : -1;
}

EccentricityTable all_pairs(const Graph& g) {
  EccentricityTable t;
  t.ecc.resize(g.n());
  std::vector<std::int32_t> dist(g.n());
  std::vector<NodeId> queue;
  for (NodeId s = 0; s < g.n(); ++s) {
    const std::int32_t e = sweep(g, s, dist, queue);
    if (e < 0) throw DisconnectedGraph("eccentricities need a connected graph");
    t.ecc[s] = std::uint32_t(e);
  }
  t.bfs_runs = g.n();
  return t;
}

// Lower/upper bound refinement: a BFS from v with eccentricity e gives every
// w the bounds max(d, e - d) <= ecc(w) <= e + d. Sources alternate between
// the unresolved node with the largest upper bound and the one with the
// smallest lower bound.
EccentricityTable bounded(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<std::int32_t> lo(n, 0), hi(n, std::numeric_limits<std::int32_t>::max());
  std::vector<NodeId> open(n);
  for (NodeId i = 0; i < n; ++i) open[i] = i;
  std::vector<std::int32_t> dist(n);
  std::vector<NodeId> queue;
  EccentricityTable t;
  t.ecc.resize(n);
  bool pick_high = true;
  while (!open.empty()) {
    NodeId v = open.front();
    for (NodeId w : open) {
      if (pick_high ? (hi[w] > hi[v] || (hi[w] == hi[v] && g.degree(w) > g.degree(v)))
                    : (lo[w] < lo[v] || (lo[w] == lo[v] && g.degree(w) > g.degree(v))))
        v = w;
    }
    pick_high = !pick_high;
    const std::int32_t e = sweep(g, v, dist, queue);
    ++t.bfs_runs;
    if (e < 0) throw DisconnectedGraph("eccentricities need a connected graph");
    lo[v] = hi[v] = e;
    std::size_t keep = 0;
    for (NodeId w : open) {
      const std::int32_t d = dist[w];
      lo[w] = std::max({lo[w], d, e - d});
      hi[w] = std::min(hi[w], e + d);
      if (lo[w] == hi[w])
        t.ecc[w] = std::uint32_t(lo[w]);
      else
        open[keep++] = w;
    }
    open.resize(keep);
  }
  return t;
}

}  // namespace

std::uint32_t EccentricityTable::diameter() const {
  return ecc.empty() ? 0 : *std::max_element(ecc.begin(), ecc.end());
}

std::uint32_t EccentricityTable::radius() const {
  return ecc.empty() ? 0 : *std::min_element(ecc.begin(), ecc.end());
}

EccentricityTable eccentricities(const Graph& g, EccentricityMethod method) {
  if (g.n() == 0) throw DisconnectedGraph("empty graph");
  if (method == EccentricityMethod::Auto)
    method = g.n() <= kAllPairsLimit ? EccentricityMethod::AllPairs
                                     : EccentricityMethod::Bounded;
  return method == EccentricityMethod::AllPairs ? all_pairs(g) : bounded(g);
}

std::vector<NodeId> prune_central_nodes(const Graph& g, const EccentricityTable& table) {
  if (table.ecc.size() != g.n())
    throw InvalidArgument("eccentricity table does not match graph");
  std::vector<NodeId> keep;
  for (NodeId i = 0; i < g.n(); ++i) {
    const auto nb = g.neighbors(i);
    if (std::none_of(nb.begin(), nb.end(),
                     [&](NodeId j) { return table.ecc[j] > table.ecc[i]; }))
      keep.push_back(i);
  }
  return keep;
}

}  // namespace kopt

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
#include <queue>
#include <string>

#include "kopt/error.hpp"
#include "kopt/graph.hpp"

namespace kopt {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::vector<Label> labels) {
  if (!labels.empty()) {
    if (labels.size() != n)
      throw InvalidArgument("label table size does not match node count");
    if (!std::is_sorted(labels.begin(), labels.end()) ||
        std::adjacent_find(labels.begin(), labels.end()) != labels.end())
      throw InvalidArgument("labels must be strictly increasing");
  }
  Graph g;
  g.edges_.assign(edges.begin(), edges.end());
  for (const Edge& e : g.edges_) {
    if (e.u == e.v) throw InvalidArgument("self-loop on node " + std::to_string(e.u));
    if (e.v >= n) throw InvalidArgument("edge endpoint out of range");
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  if (std::adjacent_find(g.edges_.begin(), g.edges_.end()) != g.edges_.end())
    throw InvalidArgument("duplicate edge");

  g.offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
  g.adj_.resize(2 * g.edges_.size());
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.adj_[fill[e.u]++] = e.v;
    g.adj_[fill[e.v]++] = e.u;
  }
  for (std::size_t u = 0; u < n; ++u)
    std::sort(g.adj_.begin() + g.offsets_[u], g.adj_.begin() + g.offsets_[u + 1]);
  g.labels_ = std::move(labels);
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t u = 0; u < n(); ++u) best = std::max(best, degree(NodeId(u)));
  return best;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  if (degree(u) > degree(v)) std::swap(u, v);
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Label> Graph::labels() const {
  if (!labels_.empty()) return labels_;
  std::vector<Label> out(n());
  std::iota(out.begin(), out.end(), Label{0});
  return out;
}

std::size_t Graph::candidate_count() const {
  const std::size_t nn = n();
  return nn * (nn - (nn > 0 ? 1 : 0)) / 2 - m();
}

Graph Graph::with_edges(std::span<const Edge> extra) const {
  std::vector<Edge> all(edges_.begin(), edges_.end());
  for (const Edge& e : extra) {
    if (e.u == e.v || e.v >= n()) throw InvalidArgument("invalid edge");
    if (has_edge(e.u, e.v))
      throw InvalidArgument("edge (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ") already present");
    all.push_back(e);
  }
  return from_edges(n(), all, labels_);
}

std::uint64_t Graph::fingerprint() const {
  // FNV-1a over the canonical (sorted) edge list and labels.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    for (int i = 0; i < 8; ++i) {
      h ^= (x >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(n());
  for (const Edge& e : edges_) mix((std::uint64_t(e.u) << 32) | e.v);
  for (Label l : labels_) mix(std::uint64_t(l));
  return h;
}

bool is_connected(const Graph& g) {
  if (g.n() == 0) return false;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](std::int32_t d) { return d < 0; });
}

std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source) {
  std::vector<std::int32_t> dist(g.n(), -1);
  std::vector<NodeId> frontier{source};
  dist[source] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const NodeId u = frontier[head];
    for (NodeId w : g.neighbors(u)) {
      if (dist[w] < 0) {
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

Graph largest_connected_component(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<std::int64_t> comp(n, -1);
  std::size_t best_comp = 0, best_size = 0, ncomp = 0;
  std::vector<NodeId> queue;
  // Components are discovered in increasing order of their smallest id, and
  // ids follow label order, so a strict '>' keeps the smallest-label tie.
  for (NodeId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    queue.assign(1, s);
    comp[s] = std::int64_t(ncomp);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (NodeId w : g.neighbors(queue[head]))
        if (comp[w] < 0) {
          comp[w] = std::int64_t(ncomp);
          queue.push_back(w);
        }
    if (queue.size() > best_size) {
      best_size = queue.size();
      best_comp = ncomp;
    }
    ++ncomp;
  }
  if (ncomp <= 1) return g;

  std::vector<NodeId> remap(n, NodeId(-1));
  std::vector<Label> labels;
  labels.reserve(best_size);
  for (NodeId u = 0; u < n; ++u) {
    if (comp[u] == std::int64_t(best_comp)) {
      remap[u] = NodeId(labels.size());
      labels.push_back(g.label(u));
    }
  }
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (comp[e.u] == std::int64_t(best_comp)) edges.emplace_back(remap[e.u], remap[e.v]);
  return Graph::from_edges(best_size, edges, std::move(labels));
}

}  // namespace kopt

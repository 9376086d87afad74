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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace kopt {

using NodeId = std::uint32_t;
using Label = std::int64_t;

// Undirected edge, always stored with u < v.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  Edge() = default;
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Immutable simple undirected graph in CSR form with sorted neighbor lists.
//
// Node ids are contiguous 0..n-1. Every node carries the label it had in the
// source data; ids are assigned in increasing label order, so comparing ids
// and comparing labels give the same order.
class Graph {
 public:
  Graph() = default;

  // Builds from an edge list over ids 0..n-1. Self-loops and duplicates are
  // rejected with InvalidArgument; use the loader for dirty input. Empty
  // `labels` means label(i) == i; otherwise labels must be strictly
  // increasing.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<Label> labels = {});

  std::size_t n() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t m() const { return edges_.size(); }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {adj_.data() + offsets_[u], adj_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  std::size_t max_degree() const;
  bool has_edge(NodeId u, NodeId v) const;

  // Sorted, u < v.
  std::span<const Edge> edges() const { return edges_; }
  Label label(NodeId u) const { return labels_.empty() ? Label(u) : labels_[u]; }
  std::vector<Label> labels() const;

  // Number of unordered non-adjacent pairs, n(n-1)/2 - m.
  std::size_t candidate_count() const;

  // Same node set with extra edges; throws InvalidArgument if any edge exists.
  Graph with_edges(std::span<const Edge> extra) const;
  Graph with_edge(Edge e) const { return with_edges({&e, 1}); }

  // Order-independent fingerprint of (n, edge set, labels).
  std::uint64_t fingerprint() const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adj_;
  std::vector<Edge> edges_;
  std::vector<Label> labels_;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t comment_lines = 0;
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
  std::size_t dropped() const { return self_loops + duplicates; }
};

struct LoadResult {
  Graph graph;
  LoadStats stats;
};

// Parses whitespace-separated "u v" lines; '#' and '%' start comment lines.
// Tokens after the second on a line are ignored. Labels are arbitrary 64-bit
// integers, remapped to ids in increasing label order.
LoadResult load_edge_list(std::istream& in);
// As above; gzip-compressed input when the name ends in ".gz".
LoadResult load_edge_list_file(const std::filesystem::path& path);

// Writes "label_u label_v" lines.
void write_edge_list(std::ostream& out, const Graph& g);

bool is_connected(const Graph& g);

// Induced subgraph on the largest connected component. Ties go to the
// component holding the smallest label. Labels are carried over.
Graph largest_connected_component(const Graph& g);

// Hop distances from `source`; unreachable nodes get -1.
std::vector<std::int32_t> bfs_distances(const Graph& g, NodeId source);

struct EccentricityTable {
  std::vector<std::uint32_t> ecc;
  std::size_t bfs_runs = 0;

  std::uint32_t diameter() const;
  std::uint32_t radius() const;
};

enum class EccentricityMethod { Auto, AllPairs, Bounded };

// Exact hop eccentricities. Auto runs one BFS per node up to 10^4 nodes and
// switches to the lower/upper-bound scheme above that. Throws
// DisconnectedGraph for disconnected input.
EccentricityTable eccentricities(const Graph& g,
                                 EccentricityMethod method = EccentricityMethod::Auto);

// Nodes whose eccentricity is not exceeded by any neighbor's, ascending.
std::vector<NodeId> prune_central_nodes(const Graph& g,
                                        const EccentricityTable& table);

namespace generators {

Graph path(std::size_t n);
Graph cycle(std::size_t n);
// Node 0 is the center.
Graph star(std::size_t n);
Graph complete(std::size_t n);
Graph grid(std::size_t rows, std::size_t cols);
// Erdos-Renyi G(n, p), not necessarily connected.
Graph gnp(std::size_t n, double p, std::uint64_t seed);
// G(n, p) resampled until connected (up to 1000 draws).
Graph connected_gnp(std::size_t n, double p, std::uint64_t seed);
// Preferential attachment: each new node links to `attach` distinct targets.
Graph barabasi_albert(std::size_t n, std::size_t attach, std::uint64_t seed);
// Ring lattice with `k` neighbors per side rewired with probability p; the
// largest component is returned.
Graph watts_strogatz(std::size_t n, std::size_t k, double p, std::uint64_t seed);
// Unit-square random geometric graph, largest component.
Graph random_geometric(std::size_t n, double radius, std::uint64_t seed);

}  // namespace generators

}  // namespace kopt

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
#include <functional>
#include <span>
#include <vector>

#include "kopt/graph.hpp"

namespace kopt {

// A set of points tagged with node ids. Either owns its coordinates (ids are
// 0..size-1) or views rows of an external node-major array, where node i
// sits at base + i * dim.
class PointCloud {
 public:
  static PointCloud owning(std::vector<double> coords, std::size_t dim);
  static PointCloud view(const double* base, std::size_t dim, std::vector<NodeId> ids);

  std::size_t size() const { return ids_.size(); }
  std::size_t dim() const { return dim_; }
  NodeId id(std::size_t k) const { return ids_[k]; }
  const std::vector<NodeId>& ids() const { return ids_; }
  const double* point(std::size_t k) const { return base_ + std::size_t(ids_[k]) * dim_; }

 private:
  std::vector<double> owned_;
  const double* base_ = nullptr;
  std::size_t dim_ = 0;
  std::vector<NodeId> ids_;
};

struct HullOptions {
  // Stop adding members at this count (0 = no limit). A capped subset no
  // longer carries the distance guarantee; `capped` is set.
  std::size_t max_members = 0;
  // Additive accuracy of each point-to-hull distance, relative to d_est.
  double distance_tol = 1e-6;
};

struct ExtremeSubset {
  // Positions into the cloud, in insertion order.
  std::vector<std::size_t> members;
  double d_est = 0.0;     // double-sweep diameter estimate
  double hull_tol = 0.0;  // mu * d_est
  bool capped = false;
  std::size_t distance_evals = 0;

  std::vector<NodeId> ids(const PointCloud& cloud) const;
};

// Greedy farthest-from-hull construction. Seeds with the double-sweep pair
// and keeps adding the point farthest from the members' hull until every
// point is within mu * d_est of it.
ExtremeSubset approx_convex_hull(const PointCloud& cloud, double mu, const HullOptions& opts = {});

struct HullDistance {
  double distance = 0.0;
  double lower = 0.0;  // certified lower bound
  bool capped = false;  // iteration cap reached; distance is an upper bound
};

// Euclidean distance from `point` (dim values) to the hull of the members.
HullDistance distance_to_hull(const double* point, const ExtremeSubset& subset,
                              const PointCloud& cloud, double tol);

struct FarthestPair {
  NodeId u = 0;
  NodeId v = 0;
  double dist_sq = 0.0;
};

// Returns true for pairs that may not be chosen (existing or selected edges).
using PairFilter = std::function<bool(NodeId, NodeId)>;

// Member pair with the largest squared distance that the filter allows.
// Near-ties (relative 1e-12) go to the smallest (min id, max id). Throws
// HullExhausted when every member pair is excluded.
FarthestPair farthest_pair(const PointCloud& cloud, const ExtremeSubset& subset,
                           const PairFilter& excluded);

}  // namespace kopt

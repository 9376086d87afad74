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

#include "kopt/hull.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <queue>

#include "kopt/error.hpp"
#include "kopt/kernels.hpp"

namespace kopt {

PointCloud PointCloud::owning(std::vector<double> coords, std::size_t dim) {
  if (dim == 0 || coords.size() % dim) throw InvalidArgument("coordinate count is not a multiple of dim");
  PointCloud c;
  c.owned_ = std::move(coords);
  c.base_ = c.owned_.data();
  c.dim_ = dim;
  c.ids_.resize(c.owned_.size() / dim);
  for (std::size_t i = 0; i < c.ids_.size(); ++i) c.ids_[i] = NodeId(i);
  return c;
}

PointCloud PointCloud::view(const double* base, std::size_t dim, std::vector<NodeId> ids) {
  if (dim == 0) throw InvalidArgument("zero-dimensional cloud");
  std::vector<NodeId> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("duplicate ids in point cloud");
  PointCloud c;
  c.base_ = base;
  c.dim_ = dim;
  c.ids_ = std::move(ids);
  return c;
}

std::vector<NodeId> ExtremeSubset::ids(const PointCloud& cloud) const {
  std::vector<NodeId> out;
  out.reserve(members.size());
  for (std::size_t k : members) out.push_back(cloud.id(k));
  return out;
}

namespace {

// Gram matrix of the member points, grown one member at a time.
class MemberGram {
 public:
  explicit MemberGram(const PointCloud& cloud) : cloud_(cloud) {}

  void add(std::size_t k) {
    const auto& kt = kernels::active();
    const double* x = cloud_.point(k);
    std::vector<double> row(members_.size() + 1);
    for (std::size_t j = 0; j < members_.size(); ++j) {
      row[j] = kt.dot(x, cloud_.point(members_[j]), cloud_.dim());
      rows_[j].push_back(row[j]);
    }
    row.back() = kt.dot(x, x, cloud_.dim());
    rows_.push_back(std::move(row));
    members_.push_back(k);
  }

  std::size_t size() const { return members_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return rows_[i][j]; }
  const double* row(std::size_t i) const { return rows_[i].data(); }
  const std::vector<std::size_t>& members() const { return members_; }

 private:
  const PointCloud& cloud_;
  std::vector<std::size_t> members_;
  std::vector<std::vector<double>> rows_;
};

struct Corral {
  std::vector<std::size_t> idx;  // member slots
  std::vector<double> w;         // convex weights
};

struct MinNormResult {
  double ub = 0.0;
  double lb = 0.0;
  bool converged = false;
  bool capped = false;
};

// Wolfe's minimum-norm-point method on conv{m_j - p}, entirely through inner
// products: <m_i - p, m_j - p> = G(i, j) - a_i - a_j + |p|^2.
// Returns early once ub < stop_below or lb > stop_above.
MinNormResult min_norm(const MemberGram& gm, const std::vector<double>& a, double pp, Corral& c,
                       double tol, double scale_sq, double stop_below, double stop_above) {
  const std::size_t nm = gm.size();
  auto gv = [&](std::size_t i, std::size_t j) { return gm(i, j) - a[i] - a[j] + pp; };
  const double eps = 1e-12;

  bool warm = !c.idx.empty();
  for (std::size_t i : c.idx) warm = warm && i < nm;
  if (!warm) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < nm; ++j)
      if (gv(j, j) < gv(best, best)) best = j;
    c.idx.assign(1, best);
    c.w.assign(1, 1.0);
  }

  MinNormResult res;
  const auto& kt = kernels::active();
  std::vector<double> wv(nm);
  const std::size_t cap = 200 + 20 * nm;
  for (std::size_t iter = 0;; ++iter) {
    // wv[j] = sum_k w_k gv(idx_k, j), accumulated row by row.
    double wa = 0.0;
    std::fill(wv.begin(), wv.end(), 0.0);
    for (std::size_t k = 0; k < c.idx.size(); ++k) {
      kt.axpy(c.w[k], gm.row(c.idx[k]), wv.data(), nm);
      wa += c.w[k] * a[c.idx[k]];
    }
    for (std::size_t j = 0; j < nm; ++j) wv[j] += pp - wa - a[j];
    double xx = 0.0;
    for (std::size_t k = 0; k < c.idx.size(); ++k) xx += c.w[k] * wv[c.idx[k]];
    xx = std::max(xx, 0.0);
    const double norm = std::sqrt(xx);
    const std::size_t jmin = std::size_t(std::min_element(wv.begin(), wv.end()) - wv.begin());
    const double wmin = wv[jmin];
    res.ub = norm;
    res.lb = norm > 0.0 ? std::max(0.0, wmin) / norm : 0.0;
    if (norm <= 1e-14 * std::sqrt(scale_sq) || res.ub - res.lb <= tol ||
        xx - wmin <= 1e-13 * scale_sq) {
      res.converged = true;
      return res;
    }
    if (res.ub < stop_below || res.lb > stop_above) return res;
    if (std::find(c.idx.begin(), c.idx.end(), jmin) != c.idx.end() || iter >= cap) {
      // No progress possible in floating point; ub stays a valid bound.
      res.capped = iter >= cap;
      res.converged = !res.capped;
      return res;
    }
    c.idx.push_back(jmin);
    c.w.push_back(0.0);

    // Minor cycle: move to the affine minimizer of the corral, dropping
    // points whose weight would turn negative.
    while (true) {
      const auto s = Eigen::Index(c.idx.size());
      Eigen::MatrixXd gs(s, s);
      for (Eigen::Index i = 0; i < s; ++i)
        for (Eigen::Index j = 0; j <= i; ++j)
          gs(i, j) = gs(j, i) = gv(c.idx[std::size_t(i)], c.idx[std::size_t(j)]);
      // The affine minimizer is G^{-1} 1, normalized. A corral is affinely
      // independent, so G is usually positive definite; the bordered system
      // handles the rank-deficient case.
      Eigen::VectorXd mu;
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(gs);
      bool ok = ldlt.info() == Eigen::Success && ldlt.isPositive() &&
                ldlt.vectorD().minCoeff() > 1e-12 * ldlt.vectorD().maxCoeff();
      if (ok) {
        mu = ldlt.solve(Eigen::VectorXd::Ones(s));
        ok = mu.allFinite() && mu.sum() > 0.0;
      }
      if (!ok) {
        Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(s + 1, s + 1);
        sys.topLeftCorner(s, s) = gs;
        sys.col(s).head(s).setOnes();
        sys.row(s).head(s).setOnes();
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
        rhs[s] = 1.0;
        mu = sys.completeOrthogonalDecomposition().solve(rhs).head(s);
      }
      mu /= mu.sum();
      if (mu.minCoeff() > eps) {
        for (Eigen::Index i = 0; i < s; ++i) c.w[std::size_t(i)] = mu[i];
        break;
      }
      double theta = 1.0;
      for (Eigen::Index i = 0; i < s; ++i) {
        const double lam = c.w[std::size_t(i)];
        if (mu[i] <= eps && lam - mu[i] > 0.0) theta = std::min(theta, lam / (lam - mu[i]));
      }
      std::size_t keep = 0;
      double total = 0.0;
      for (Eigen::Index i = 0; i < s; ++i) {
        const double lam = (1.0 - theta) * c.w[std::size_t(i)] + theta * mu[i];
        if (lam > eps) {
          c.idx[keep] = c.idx[std::size_t(i)];
          c.w[keep] = lam;
          total += lam;
          ++keep;
        }
      }
      if (keep == 0) {
        // Degenerate corral; restart from the newest point alone.
        c.idx.assign(1, jmin);
        c.w.assign(1, 1.0);
        break;
      }
      c.idx.resize(keep);
      c.w.resize(keep);
      for (double& v : c.w) v /= total;
      if (keep == std::size_t(s)) break;
    }
  }
}

void extend_inner(const PointCloud& cloud, const MemberGram& gm, std::size_t k,
                  std::vector<double>& a) {
  const auto& kt = kernels::active();
  const double* p = cloud.point(k);
  for (std::size_t j = a.size(); j < gm.size(); ++j)
    a.push_back(kt.dot(cloud.point(gm.members()[j]), p, cloud.dim()));
}

std::size_t farthest_from(const PointCloud& cloud, std::size_t from) {
  const auto& kt = kernels::active();
  std::size_t best = from;
  double best_d = -1.0;
  for (std::size_t k = 0; k < cloud.size(); ++k) {
    const double d = kt.sqdist(cloud.point(k), cloud.point(from), cloud.dim());
    if (d > best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

}  // namespace

ExtremeSubset approx_convex_hull(const PointCloud& cloud, double mu, const HullOptions& opts) {
  if (cloud.size() == 0) throw InvalidArgument("empty point cloud");
  if (!(mu > 0.0 && mu < 1.0)) throw InvalidArgument("mu must lie in (0, 1)");
  const auto& kt = kernels::active();
  const std::size_t dim = cloud.dim();

  ExtremeSubset out;
  const std::size_t q = farthest_from(cloud, 0);
  const std::size_t r = farthest_from(cloud, q);
  out.d_est = std::sqrt(kt.sqdist(cloud.point(q), cloud.point(r), dim));
  out.hull_tol = mu * out.d_est;
  if (q == r || out.d_est == 0.0) {
    out.members.push_back(q);
    return out;
  }
  const double thr = out.hull_tol;
  const double tol = opts.distance_tol * out.d_est;
  const double scale_sq = out.d_est * out.d_est;

  MemberGram gm(cloud);
  gm.add(q);
  gm.add(r);

  struct Entry {
    double ub;
    std::size_t k;
  };
  // Largest bound first; smaller index first among equal bounds.
  auto lower = [](const Entry& x, const Entry& y) {
    return x.ub < y.ub || (x.ub == y.ub && x.k > y.k);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower);
  for (std::size_t k = 0; k < cloud.size(); ++k) {
    if (k == q || k == r) continue;
    const double ub = std::sqrt(std::min(kt.sqdist(cloud.point(k), cloud.point(q), dim),
                                         kt.sqdist(cloud.point(k), cloud.point(r), dim)));
    if (ub > thr) heap.push({ub, k});
  }

  std::vector<std::vector<double>> inner(cloud.size());
  std::vector<Corral> corral(cloud.size());
  while (!heap.empty() && heap.top().ub > thr) {
    if (opts.max_members && gm.size() >= opts.max_members) {
      out.capped = true;
      break;
    }
    const Entry top = heap.top();
    heap.pop();
    const double next = heap.empty() ? 0.0 : heap.top().ub;
    const double bar = std::max(next, thr);
    auto& a = inner[top.k];
    extend_inner(cloud, gm, top.k, a);
    const double* p = cloud.point(top.k);
    const double pp = kt.dot(p, p, dim);
    const MinNormResult res = min_norm(gm, a, pp, corral[top.k], tol, scale_sq, bar, bar);
    ++out.distance_evals;
    if (res.ub <= thr) {
      std::vector<double>().swap(a);
      continue;
    }
    const bool farthest = res.lb > bar || ((res.converged || res.capped) && res.ub >= next);
    if (farthest) {
      gm.add(top.k);
      std::vector<double>().swap(a);
    } else {
      heap.push({res.ub, top.k});
    }
  }
  out.members = gm.members();
  return out;
}

HullDistance distance_to_hull(const double* point, const ExtremeSubset& subset,
                              const PointCloud& cloud, double tol) {
  if (subset.members.empty()) throw InvalidArgument("empty member set");
  const auto& kt = kernels::active();
  MemberGram gm(cloud);
  for (std::size_t k : subset.members) gm.add(k);
  std::vector<double> a(gm.size());
  for (std::size_t j = 0; j < gm.size(); ++j) a[j] = kt.dot(cloud.point(gm.members()[j]), point, cloud.dim());
  const double pp = kt.dot(point, point, cloud.dim());
  const double scale = std::max(subset.d_est, 1e-300);
  Corral c;
  const MinNormResult res = min_norm(gm, a, pp, c, tol, scale * scale, -1.0, INFINITY);
  return {res.ub, res.lb, res.capped};
}

FarthestPair farthest_pair(const PointCloud& cloud, const ExtremeSubset& subset,
                           const PairFilter& excluded) {
  const auto& kt = kernels::active();
  const auto& m = subset.members;
  bool found = false;
  FarthestPair best;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      NodeId u = cloud.id(m[i]), v = cloud.id(m[j]);
      if (u > v) std::swap(u, v);
      if (excluded && excluded(u, v)) continue;
      const double d = kt.sqdist(cloud.point(m[i]), cloud.point(m[j]), cloud.dim());
      const double slack = 1e-12 * std::max(d, best.dist_sq);
      const bool better = !found || d > best.dist_sq + slack ||
                          (std::abs(d - best.dist_sq) <= slack &&
                           std::make_pair(u, v) < std::make_pair(best.u, best.v));
      if (better) {
        best = {u, v, d};
        found = true;
      }
    }
  }
  if (!found) throw HullExhausted("every member pair is excluded; widen the hull (smaller mu)");
  return best;
}

}  // namespace kopt

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
#include <string>

#include "kopt/error.hpp"
#include "kopt/kernels.hpp"
#include "kopt/linalg.hpp"

namespace kopt {
namespace {

// Column-wise helpers over node-major n x c arrays.
struct Block {
  std::size_t n, c;
  const kernels::Table& k;

  // acc[j] = sum_i a(i, j) * b(i, j)
  void col_dot(const double* a, const double* b, double* acc) const {
    std::fill(acc, acc + c, 0.0);
    if (c == 1) {
      acc[0] = k.dot(a, b, n);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) k.mul_acc(a + i * c, b + i * c, acc, c);
  }

  // y(i, j) += coef[j] * x(i, j)
  void scale_add(const double* coef, const double* x, double* y) const {
    if (c == 1) {
      k.axpy(coef[0], x, y, n);
      return;
    }
    for (std::size_t i = 0; i < n; ++i) k.vaxpy(coef, x + i * c, y + i * c, c);
  }

  // y(i, j) = x(i, j) + coef[j] * y(i, j)
  void xpay(const double* coef, const double* x, double* y) const {
    if (c == 1) {
      const double b = coef[0];
      for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
      return;
    }
    for (std::size_t i = 0; i < n; ++i) k.vxpay(coef, x + i * c, y + i * c, c);
  }

  // Subtracts every column's mean.
  void center(double* x, std::vector<double>& tmp) const {
    tmp.assign(c, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < c; ++j) tmp[j] += x[i * c + j];
    for (double& v : tmp) v /= double(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < c; ++j) x[i * c + j] -= tmp[j];
  }
};

}  // namespace

LaplacianSolver::LaplacianSolver(const Graph& g) {
  if (!is_connected(g)) throw DisconnectedGraph("Laplacian solver needs a connected graph");
  const std::size_t n = g.n();
  offsets_.resize(n + 1, 0);
  adj_.reserve(2 * g.m());
  degree_.resize(n);
  for (NodeId u = 0; u < n; ++u) {
    const auto nb = g.neighbors(u);
    adj_.insert(adj_.end(), nb.begin(), nb.end());
    offsets_[u + 1] = adj_.size();
    degree_[u] = double(nb.size());
  }
  max_degree_ = g.max_degree();
}

void LaplacianSolver::add_edge(Edge e) {
  if (e.u == e.v || e.v >= n()) throw InvalidArgument("invalid edge");
  extra_.push_back(e);
  degree_[e.u] += 1.0;
  degree_[e.v] += 1.0;
  max_degree_ = std::max({max_degree_, std::size_t(degree_[e.u]), std::size_t(degree_[e.v])});
}

double LaplacianSolver::lambda2_estimate() const {
  if (!lambda2_) lambda2_ = lanczos_lambda2(*this);
  return *lambda2_;
}

std::size_t LaplacianSolver::iteration_cap() const {
  const double kappa = 2.0 * double(max_degree_) / lambda2_estimate();
  return std::size_t(20.0 * std::sqrt(kappa)) + 200;
}

void LaplacianSolver::apply(const double* x, double* y, std::size_t c) const {
  const std::size_t n = this->n();
  if (c == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = double(offsets_[i + 1] - offsets_[i]) * x[i];
      for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p) s -= x[adj_[p]];
      y[i] = s;
    }
    for (const Edge& e : extra_) {
      const double d = x[e.u] - x[e.v];
      y[e.u] += d;
      y[e.v] -= d;
    }
    return;
  }
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < n; ++i) {
    double* yi = y + i * c;
    const double* xi = x + i * c;
    const double deg = double(offsets_[i + 1] - offsets_[i]);
    for (std::size_t j = 0; j < c; ++j) yi[j] = deg * xi[j];
    for (std::size_t p = offsets_[i]; p < offsets_[i + 1]; ++p)
      k.axpy(-1.0, x + std::size_t(adj_[p]) * c, yi, c);
  }
  for (const Edge& e : extra_) {
    double* yu = y + std::size_t(e.u) * c;
    double* yv = y + std::size_t(e.v) * c;
    const double* xu = x + std::size_t(e.u) * c;
    const double* xv = x + std::size_t(e.v) * c;
    for (std::size_t j = 0; j < c; ++j) {
      const double d = xu[j] - xv[j];
      yu[j] += d;
      yv[j] -= d;
    }
  }
}

std::vector<double> LaplacianSolver::solve(std::span<const double> b, double tol,
                                           SolveStats* stats) const {
  if (b.size() != n()) throw InvalidArgument("right-hand side has wrong length");
  std::vector<double> x(n());
  solve_block(b.data(), x.data(), 1, tol, stats);
  return x;
}

void LaplacianSolver::solve_block(const double* b_in, double* x, std::size_t c, double tol,
                                  SolveStats* stats) const {
  if (!(tol > 0.0)) throw InvalidArgument("solver tolerance must be positive");
  const std::size_t n = this->n();
  const std::size_t len = n * c;
  const Block blk{n, c, kernels::active()};
  std::vector<double> tmp;

  std::vector<double> b(b_in, b_in + len), raw(c), kept(c);
  blk.col_dot(b.data(), b.data(), raw.data());
  blk.center(b.data(), tmp);
  blk.col_dot(b.data(), b.data(), kept.data());
  // A column that is (numerically) a multiple of the ones vector has the zero
  // solution; round-off left over from centering must not be chased.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (kept[j] <= 1e-28 * raw[j]) b[i * c + j] = 0.0;
  std::fill(x, x + len, 0.0);
  std::vector<double> r = b, z(len), p(len), ap(len);

  std::vector<double> inv_deg(n);
  for (std::size_t i = 0; i < n; ++i) inv_deg[i] = 1.0 / degree_[i];
  auto precondition = [&] {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < c; ++j) z[i * c + j] = inv_deg[i] * r[i * c + j];
    blk.center(z.data(), tmp);
  };

  const double lambda = lambda2_estimate();
  const double inv_sqrt_lambda = 1.0 / std::sqrt(lambda);
  const double target = tol / (1.0 + tol);
  const std::size_t cap = iteration_cap();

  std::vector<double> rz(c), rz_new(c), pap(c), alpha(c), beta(c), rr(c), xb(c), xr(c);
  std::vector<char> active(c, 1);
  std::vector<double> ratio(c, 0.0);

  // ratio = ||r|| / sqrt(lambda) / ||x||_L; converged once below target.
  auto check = [&]() {
    blk.col_dot(r.data(), r.data(), rr.data());
    blk.col_dot(x, b.data(), xb.data());
    blk.col_dot(x, r.data(), xr.data());
    std::size_t open = 0;
    for (std::size_t j = 0; j < c; ++j) {
      if (!active[j]) continue;
      const double res = std::sqrt(std::max(rr[j], 0.0)) * inv_sqrt_lambda;
      const double xl = std::sqrt(std::max(xb[j] - xr[j], 0.0));
      if (res == 0.0) {
        ratio[j] = 0.0;
        active[j] = 0;
      } else {
        ratio[j] = xl > 0.0 ? res / xl : INFINITY;
        if (ratio[j] <= target) active[j] = 0;
      }
      open += active[j];
    }
    return open;
  };

  std::size_t it = 0;
  std::size_t open = check();
  if (open > 0) {
    precondition();
    p = z;
    blk.col_dot(r.data(), z.data(), rz.data());
  }
  while (open > 0) {
    if (it >= cap) {
      double worst = 0.0;
      for (std::size_t j = 0; j < c; ++j)
        if (active[j]) worst = std::max(worst, ratio[j] < 1.0 ? ratio[j] / (1.0 - ratio[j]) : INFINITY);
      throw SolverError("PCG hit the iteration cap of " + std::to_string(cap) +
                            " (relative L-norm bound " + std::to_string(worst) + ")",
                        worst);
    }
    ++it;
    apply(p.data(), ap.data(), c);
    blk.col_dot(p.data(), ap.data(), pap.data());
    for (std::size_t j = 0; j < c; ++j) {
      alpha[j] = active[j] && pap[j] > 0.0 ? rz[j] / pap[j] : 0.0;
    }
    blk.scale_add(alpha.data(), p.data(), x);
    for (std::size_t j = 0; j < c; ++j) alpha[j] = -alpha[j];
    blk.scale_add(alpha.data(), ap.data(), r.data());
    open = check();
    if (open == 0) break;
    precondition();
    blk.col_dot(r.data(), z.data(), rz_new.data());
    for (std::size_t j = 0; j < c; ++j) {
      beta[j] = rz[j] != 0.0 ? rz_new[j] / rz[j] : 0.0;
      rz[j] = rz_new[j];
    }
    blk.xpay(beta.data(), z.data(), p.data());
  }

  blk.center(x, tmp);
  if (stats) {
    stats->iterations = it;
    double worst = 0.0;
    for (double q : ratio) worst = std::max(worst, q < 1.0 ? q / (1.0 - q) : INFINITY);
    stats->error_bound = worst;
  }
}

std::vector<double> lap_solve(const Graph& g, std::span<const double> b, double tol) {
  return LaplacianSolver(g).solve(b, tol);
}

double lanczos_lambda2(const LaplacianSolver& solver, std::size_t max_steps,
                       std::uint64_t seed) {
  const std::size_t n = solver.n();
  if (n < 2) throw InvalidArgument("lambda2 needs at least two nodes");
  const std::size_t steps = std::min(max_steps, n - 1);
  const auto& k = kernels::active();
  auto deflate = [&](std::vector<double>& v) {
    double mean = 0.0;
    for (double a : v) mean += a;
    mean /= double(n);
    for (double& a : v) a -= mean;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<std::vector<double>> basis;
  std::vector<double> v(n), w(n);
  for (double& a : v) a = normal(rng);
  deflate(v);
  double norm = std::sqrt(k.dot(v.data(), v.data(), n));
  for (double& a : v) a /= norm;

  std::vector<double> alpha, beta;
  double estimate = 0.0;
  for (std::size_t j = 0; j < steps; ++j) {
    basis.push_back(v);
    solver.apply(v.data(), w.data(), 1);
    const double a = k.dot(w.data(), v.data(), n);
    alpha.push_back(a);
    // Full reorthogonalization (twice is enough) keeps the Ritz values clean.
    for (int pass = 0; pass < 2; ++pass) {
      deflate(w);
      for (const auto& q : basis) k.axpy(-k.dot(w.data(), q.data(), n), q.data(), w.data(), n);
    }
    deflate(w);
    const double b = std::sqrt(k.dot(w.data(), w.data(), n));
    const bool breakdown = b <= 1e-12 * std::max(1.0, std::abs(a));
    if (!breakdown && j % 5 != 4 && j + 1 < steps) {
      beta.push_back(b);
      for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / b;
      continue;
    }

    const auto m = Eigen::Index(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[std::size_t(i)];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[std::size_t(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    estimate = es.eigenvalues()[0];
    const double resid = b * std::abs(es.eigenvectors()(m - 1, 0));
    if (breakdown || resid <= 1e-10 * estimate) break;
    beta.push_back(b);
    for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / b;
  }
  if (!(estimate > 0.0)) throw DisconnectedGraph("Laplacian has a repeated zero eigenvalue");
  return estimate;
}

}  // namespace kopt

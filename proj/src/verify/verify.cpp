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

#include "kopt/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>

#include "kopt/error.hpp"
#include "kopt/hull.hpp"
#include "kopt/kirchhoff.hpp"
#include "kopt/optimize.hpp"
#include "kopt/sketch.hpp"
#include "oracles.hpp"

namespace kopt::verify {
namespace {

namespace gen = generators;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::size_t pick(Scale s, std::size_t tiny, std::size_t desk, std::size_t full) {
  return s == Scale::Tiny ? tiny : s == Scale::Desk ? desk : full;
}

Check make(std::string id, std::string name, double measured, double tolerance) {
  Check c;
  c.id = std::move(id);
  c.name = std::move(name);
  c.measured = measured;
  c.tolerance = tolerance;
  return c;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

double ratio_bound(const Graph& g) {
  const auto lam = oracle::eigenvalues(g);
  const double gamma = std::pow(lam[1] / double(g.n()), 2);
  const double alpha = 1.0 - gamma;
  return alpha > 0.0 ? -std::expm1(-alpha * gamma) / alpha : gamma;
}

Check closed_forms() {
  Check c = make("1", "closed-form Kirchhoff indices", 0.0, 1e-9);
  c.time_limit = 1.0;
  const Timer t;
  for (std::size_t n = 3; n <= 12; ++n) {
    const Graph g = gen::path(n);
    const double k = kirchhoff_index(pseudo_inverse(g));
    const double nd = double(n);
    c.measured = std::max({c.measured, rel_err(k, nd * (nd * nd - 1.0) / 6.0),
                           rel_err(k, oracle::kirchhoff_pairs(g))});
  }
  for (std::size_t n = 3; n <= 10; ++n) {
    const Graph g = gen::complete(n);
    const double k = kirchhoff_index(pseudo_inverse(g));
    c.measured = std::max({c.measured, rel_err(k, double(n) - 1.0),
                           rel_err(k, oracle::kirchhoff_pairs(g))});
  }
  c.seconds = t.seconds();
  c.detail = "max relative error over P3..P12 and K3..K10";
  return c;
}

Check delta_formula(Scale s) {
  Check c = make("2", "marginal decrease formula vs recomputation", 0.0, 1e-8);
  c.time_limit = 30.0;
  const Timer t;
  const std::size_t graphs = pick(s, 5, 20, 50);
  std::size_t edges = 0;
  for (std::size_t i = 0; i < graphs; ++i) {
    const Graph g = gen::connected_gnp(12, 0.3, 1000 + i);
    const auto state = pseudo_inverse(g);
    const double k0 = oracle::kirchhoff(g);
    for (const Edge& e : candidate_edges(g)) {
      const double exact = k0 - oracle::kirchhoff(g.with_edge(e));
      c.measured = std::max(c.measured, rel_err(marginal_decrease(state, e), exact));
      ++edges;
    }
  }
  c.seconds = t.seconds();
  c.detail = "max relative error over " + std::to_string(edges) + " candidate edges of " +
             std::to_string(graphs) + " graphs";
  return c;
}

Check rank_one(Scale s) {
  Check c = make("3", "rank-1 maintained L+ and L2+ vs fresh", 0.0, 1e-6);
  c.time_limit = 30.0;
  const Timer t;
  const std::size_t graphs = pick(s, 3, 10, 20);
  for (std::size_t i = 0; i < graphs; ++i) {
    DenseSpectralState state = pseudo_inverse(gen::connected_gnp(15, 0.25, 2000 + i));
    for (int step = 0; step < 5; ++step) {
      Edge best;
      double bd = -1.0;
      for (const Edge& e : candidate_edges(state.graph)) {
        const double d = marginal_decrease(state, e);
        if (d > bd) {
          bd = d;
          best = e;
        }
      }
      sm_update(state, best);
    }
    const Eigen::MatrixXd fresh = oracle::pinv(state.graph);
    c.measured = std::max({c.measured, (state.lp - fresh).cwiseAbs().maxCoeff(),
                           (state.lp2 - fresh * fresh).cwiseAbs().maxCoeff()});
  }
  c.seconds = t.seconds();
  c.detail = "max-abs error after 5 insertions on " + std::to_string(graphs) + " graphs";
  return c;
}

Check greedy_bound(Scale s) {
  Check c = make("4", "greedy decrease >= ratio bound x optimum", 0.0, 0.0);
  c.time_limit = 600.0;
  const Timer t;
  const std::size_t max_n = pick(s, 5, 6, 6);
  std::size_t cases = 0, classes = 0;
  double tightest = INFINITY;
  for (std::size_t n = 2; n <= max_n; ++n) {
    for (const Graph& g : connected_graphs(n)) {
      ++classes;
      const double ratio = ratio_bound(g);
      const double k0 = oracle::kirchhoff(g);
      for (std::size_t k = 1; k <= 3 && k <= g.candidate_count(); ++k) {
        AlgoParams p;
        p.k = k;
        const auto r = deter(g, p);
        const double greedy = k0 - oracle::kirchhoff(g.with_edges(r.edges()));
        const double best = k0 - oracle::best_k_subset(g, k);
        ++cases;
        if (greedy < ratio * best * (1.0 - 1e-12)) c.measured += 1.0;
        tightest = std::min(tightest, greedy / best / ratio);
      }
    }
  }
  c.seconds = t.seconds();
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "violations over %zu cases (%zu graph classes, n <= %zu); smallest "
                "(greedy/optimum)/bound = %.4g",
                cases, classes, max_n, tightest);
  c.detail = buf;
  return c;
}

Check sketch_accuracy(Scale s) {
  Check c = make("5", "sketched resistance and biharmonic within eps", 1.0, 0.95);
  c.at_most = false;
  c.time_limit = 300.0;
  const Timer t;
  const std::size_t graphs = pick(s, 1, 3, 10);
  const std::size_t seeds = pick(s, 2, 10, 10);
  const double eps = 0.2;
  for (std::size_t i = 0; i < graphs; ++i) {
    const Graph g = gen::connected_gnp(200, 0.05, 3000 + i);
    const Eigen::MatrixXd lp = oracle::pinv(g);
    const auto cand = candidate_edges(g);
    const double tol = solver_tolerance(g.n(), eps / 2.0, eps / 2.0).value;
    for (std::uint64_t seed = 0; seed < seeds; ++seed) {
      const auto rs = build_resistance_sketch(g, eps, seed);
      const auto es = embed_nodes(g, eps / 2.0, tol, seed);
      std::size_t r_ok = 0, b_ok = 0;
      for (const Edge& e : cand) {
        const int u = int(e.u), v = int(e.v);
        r_ok += rel_err(query_resistance(rs, e.u, e.v), oracle::resistance(lp, u, v)) <= eps;
        b_ok += rel_err(query_biharmonic(es, e.u, e.v), oracle::biharmonic(lp, u, v)) <= eps;
      }
      c.measured = std::min({c.measured, double(r_ok) / double(cand.size()),
                             double(b_ok) / double(cand.size())});
    }
  }
  c.seconds = t.seconds();
  c.detail = "smallest in-band fraction over " + std::to_string(graphs) + " graphs x " +
             std::to_string(seeds) + " seeds, n = 200";
  return c;
}

Check gradient_rounds(Scale s) {
  Check c = make("6", "hull selectors pick (1-eps)-max gradients", 1.0, 0.9);
  c.at_most = false;
  c.time_limit = 600.0;
  const Timer t;
  const std::size_t graphs = pick(s, 1, 1, 3);
  const std::size_t seeds = pick(s, 3, 10, 10);
  const double eps = 0.25;
  std::size_t fg_good = 0, fgp_good = 0;
  for (std::size_t i = 0; i < graphs; ++i) {
    const Graph g = gen::connected_gnp(s == Scale::Tiny ? 80 : 200, 0.05, 4000 + i);
    for (Algo a : {Algo::FastGrad, Algo::FastGradPlus}) {
      std::size_t good = 0;
      for (std::uint64_t seed = 0; seed < seeds; ++seed) {
        AlgoParams p;
        p.k = 5;
        p.epsilon = eps;
        p.seed = seed;
        const auto r = run_algorithm(a, g, p);
        bool ok = true;
        Graph cur = g;
        for (const Step& st : r.steps) {
          const Eigen::MatrixXd lp = oracle::pinv(cur);
          double best = 0.0;
          for (const Edge& e : oracle::non_edges(cur))
            best = std::max(best, oracle::biharmonic(lp, int(e.u), int(e.v)));
          ok = ok && oracle::biharmonic(lp, int(st.edge.u), int(st.edge.v)) >= (1.0 - eps) * best;
          cur = cur.with_edge(st.edge);
        }
        good += ok;
      }
      c.measured = std::min(c.measured, double(good) / double(seeds));
      (a == Algo::FastGrad ? fg_good : fgp_good) += good;
    }
  }
  c.seconds = t.seconds();
  c.detail = "smallest per-graph fraction of seeded runs (k = 5, n = " +
             std::to_string(s == Scale::Tiny ? 80 : 200) + ") with every round in bound; fastgrad " +
             std::to_string(fg_good) + "/" + std::to_string(graphs * seeds) + ", fastgrad+ " +
             std::to_string(fgp_good) + "/" + std::to_string(graphs * seeds);
  return c;
}

Check hull_diameter(Scale s) {
  Check c = make("7", "hull subset keeps the diameter", 0.0, 0.0);
  c.time_limit = 60.0;
  const Timer t;
  const std::size_t clouds = pick(s, 3, 5, 20);
  const double mu = 0.01;
  double worst = INFINITY;
  std::size_t max_members = 0;
  for (std::size_t i = 0; i < clouds; ++i) {
    std::mt19937_64 rng(5000 + i);
    std::normal_distribution<double> normal;
    std::vector<double> xs(500 * 20);
    for (double& v : xs) v = normal(rng);
    const PointCloud cloud = PointCloud::owning(xs, 20);
    const auto sub = approx_convex_hull(cloud, mu);
    max_members = std::max(max_members, sub.members.size());
    auto diam = [&](const std::vector<std::size_t>& idx) {
      double d = 0.0;
      for (std::size_t a = 0; a < idx.size(); ++a)
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
          double q = 0.0;
          for (std::size_t j = 0; j < 20; ++j) {
            const double diff = cloud.point(idx[a])[j] - cloud.point(idx[b])[j];
            q += diff * diff;
          }
          d = std::max(d, q);
        }
      return d;
    };
    std::vector<std::size_t> all(cloud.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    const double ratio = diam(sub.members) / diam(all);
    worst = std::min(worst, ratio);
    if (ratio < 1.0 - 8.0 * mu) c.measured += 1.0;
  }
  c.seconds = t.seconds();
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "violations over %zu clouds (500 x 20, mu = 0.01); smallest d(sub)^2/d(P)^2 = "
                "%.6f, largest subset %zu",
                clouds, worst, max_members);
  c.detail = buf;
  return c;
}

Check feasibility(Scale s) {
  Check c = make("8", "feasible edges and strictly decreasing K", 0.0, 0.0);
  const Timer t;
  std::vector<Graph> graphs{gen::star(10), gen::cycle(12), gen::grid(5, 6),
                            gen::connected_gnp(50, 0.1, 6000)};
  if (s != Scale::Tiny) {
    graphs.push_back(gen::barabasi_albert(80, 2, 6001));
    graphs.push_back(gen::watts_strogatz(60, 2, 0.2, 6002));
    graphs.push_back(gen::random_geometric(60, 0.3, 6003));
  }
  if (s == Scale::Full) {
    graphs.push_back(gen::connected_gnp(150, 0.04, 6004));
    graphs.push_back(gen::barabasi_albert(200, 3, 6005));
  }
  std::size_t runs = 0;
  std::string bad;
  for (const Graph& g : graphs) {
    for (Algo a : {Algo::Deter, Algo::Grad, Algo::Approx, Algo::FastGrad, Algo::FastGradPlus,
                   Algo::OneConv, Algo::Brute}) {
      AlgoParams p;
      p.k = a == Algo::Brute ? (g.n() <= 30 ? 2 : 1) : 5;
      p.epsilon = 0.3;
      p.seed = 7;
      ++runs;
      std::size_t violations = 0;
      try {
        const auto r = run_algorithm(a, g, p);
        std::set<Edge> seen;
        double prev = r.diagnostics.initial_kirchhoff;
        violations += r.steps.size() != p.k;
        for (const Step& st : r.steps) {
          violations += g.has_edge(st.edge.u, st.edge.v) || !seen.insert(st.edge).second ||
                        !(st.kirchhoff < prev);
          prev = st.kirchhoff;
        }
      } catch (const std::exception& ex) {
        ++violations;
        bad += " " + std::string(algo_name(a)) + "@n=" + std::to_string(g.n()) + ": " + ex.what();
      }
      c.measured += double(violations);
    }
  }
  c.seconds = t.seconds();
  c.detail = "violations over " + std::to_string(runs) + " runs (7 algorithms x " +
             std::to_string(graphs.size()) + " graphs)" + bad;
  return c;
}

// Quality relative to deter, measured on the decrease K0 - K_final.
std::vector<Check> quality(Scale s) {
  Check g2 = make("9a", "grad decrease within 2% of deter", 1.0, 0.98);
  Check f5 = make("9b", "fastgrad/fastgrad+/oneconv decrease within 5% of deter", 1.0, 0.95);
  g2.at_most = f5.at_most = false;
  g2.soft = f5.soft = true;
  const Timer t;
  std::vector<std::pair<std::string, Graph>> graphs;
  if (s == Scale::Tiny) {
    graphs = {{"ba120", gen::barabasi_albert(120, 2, 7000)}};
  } else if (s == Scale::Desk) {
    graphs = {{"ba300", gen::barabasi_albert(300, 3, 7000)},
              {"gnp300", gen::connected_gnp(300, 0.03, 7001)}};
  } else {
    graphs = {{"ba2000", gen::barabasi_albert(2000, 3, 7000)},
              {"ws2000", gen::watts_strogatz(2000, 3, 0.1, 7001)},
              {"geo1500", gen::random_geometric(1500, 0.05, 7002)},
              {"gnp1000", gen::connected_gnp(1000, 0.008, 7003)},
              {"ba3000", gen::barabasi_albert(3000, 2, 7004)}};
  }
  const std::size_t k = pick(s, 5, 10, 20);
  std::string d2, d5;
  for (const auto& [name, g] : graphs) {
    AlgoParams p;
    p.k = k;
    p.seed = 11;
    p.tol_mode = TolMode::Fixed;
    p.fixed_tol = 0.1;
    p.max_hull_members = 256;
    const auto base = deter(g, p);
    const double k0 = base.diagnostics.initial_kirchhoff;
    const double ref = k0 - base.final_kirchhoff();
    char buf[200];
    auto measure = [&](Algo a, Check& c, std::string& d) {
      SelectionResult r;
      try {
        r = run_algorithm(a, g, p);
      } catch (const std::exception& ex) {
        c.measured = 0.0;
        d += " " + name + "/" + std::string(algo_name(a)) + " failed (" + ex.what() + ")";
        return;
      }
      const double q = (k0 - r.final_kirchhoff()) / ref;
      c.measured = std::min(c.measured, q);
      std::snprintf(buf, sizeof buf, " %s/%s=%.4f(K %.6f)", name.c_str(),
                    std::string(algo_name(a)).c_str(), q,
                    r.final_kirchhoff() / base.final_kirchhoff());
      d += buf;
    };
    measure(Algo::Grad, g2, d2);
    for (Algo a : {Algo::FastGrad, Algo::FastGradPlus, Algo::OneConv}) measure(a, f5, d5);
  }
  g2.seconds = f5.seconds = t.seconds();
  g2.detail = "smallest decrease ratio vs deter (final K ratio in parentheses), k = " + std::to_string(k) + ":" + d2;
  f5.detail = "smallest decrease ratio vs deter (final K ratio in parentheses), k = " + std::to_string(k) + ":" + d5;
  return {g2, f5};
}

}  // namespace

std::vector<Graph> connected_graphs(std::size_t n) {
  std::vector<Graph> out;
  if (n == 0) return out;
  if (n == 1) {
    out.push_back(Graph::from_edges(1, {}));
    return out;
  }
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < int(n); ++u)
    for (int v = u + 1; v < int(n); ++v) pairs.emplace_back(u, v);
  std::vector<std::vector<int>> slot(n, std::vector<int>(n, 0));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    slot[pairs[i].first][pairs[i].second] = int(i);
    slot[pairs[i].second][pairs[i].first] = int(i);
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  std::set<std::uint32_t> seen;
  const std::uint32_t total = std::uint32_t(1) << pairs.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    if (std::size_t(std::popcount(mask)) < n - 1) continue;
    std::uint32_t canon = mask;
    for (const auto& p : perms) {
      std::uint32_t img = 0;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1u) img |= std::uint32_t(1) << slot[p[pairs[i].first]][p[pairs[i].second]];
      canon = std::min(canon, img);
      if (canon < mask) break;
    }
    if (canon != mask || !seen.insert(mask).second) continue;
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mask >> i & 1u) edges.emplace_back(NodeId(pairs[i].first), NodeId(pairs[i].second));
    Graph g = Graph::from_edges(n, edges);
    if (is_connected(g)) out.push_back(std::move(g));
  }
  return out;
}

std::vector<Check> run_suite(Scale scale, const Reporter& report) {
  std::vector<Check> out;
  auto add = [&](Check c) {
    if (report) report(c);
    out.push_back(std::move(c));
  };
  add(closed_forms());
  add(delta_formula(scale));
  add(rank_one(scale));
  add(greedy_bound(scale));
  add(sketch_accuracy(scale));
  add(gradient_rounds(scale));
  add(hull_diameter(scale));
  add(feasibility(scale));
  for (Check& c : quality(scale)) add(std::move(c));
  return out;
}

std::string format_check(const Check& c) {
  const char* status = c.skipped ? "SKIP" : c.pass() ? "PASS" : c.soft ? "WARN" : "FAIL";
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s [%s] %s: measured %.6g %s %.6g (%.2f s", status, c.id.c_str(),
                c.name.c_str(), c.measured, c.at_most ? "<=" : ">=", c.tolerance, c.seconds);
  std::string line = buf;
  if (c.time_limit > 0.0) {
    std::snprintf(buf, sizeof buf, ", limit %.0f s", c.time_limit);
    line += buf;
  }
  line += ")";
  if (!c.detail.empty()) line += " " + c.detail;
  return line;
}

std::size_t failures(const std::vector<Check>& checks) {
  std::size_t f = 0;
  for (const Check& c : checks) f += !c.pass() && !c.soft;
  return f;
}

}  // namespace kopt::verify

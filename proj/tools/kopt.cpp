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
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kopt/error.hpp"
#include "kopt/graph.hpp"
#include "kopt/linalg.hpp"
#include "kopt/optimize.hpp"
#include "kopt/report.hpp"
#include "kopt/verify.hpp"

namespace {

constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunOptions {
  std::string algo = "deter";
  std::size_t k = 50;
  std::optional<double> epsilon;
  double mu = 0.01;
  double beta = 0.1;
  double delta = 0.1;
  std::optional<std::uint64_t> seed;
  double c_jl = 1.0;
  bool no_prune = false;
  std::string tol_mode = "fixed";
  double solver_tol = 0.1;
  std::size_t hull_cap = 256;
  std::string tracking = "auto";
  std::string cache_dir;
};

void add_run_options(CLI::App* cmd, RunOptions& o, bool single_algo) {
  if (single_algo)
    cmd->add_option("--algo,-a", o.algo, "deter|grad|approx|fastgrad|fastgrad+|oneconv|brute")
        ->capture_default_str();
  cmd->add_option("--epsilon,-e", o.epsilon, "sets mu, beta, delta to eps/24, eps/3, eps/3");
  cmd->add_option("--mu", o.mu, "hull accuracy")->capture_default_str();
  cmd->add_option("--beta", o.beta, "embedding accuracy")->capture_default_str();
  cmd->add_option("--delta", o.delta, "solver accuracy")->capture_default_str();
  cmd->add_option("--seed,-s", o.seed, "random seed (falls back to KOPT_SEED, then 0)");
  cmd->add_option("--c-jl", o.c_jl, "JL row constant")->capture_default_str();
  cmd->add_flag("--no-prune", o.no_prune, "skip eccentricity pruning in fastgrad+");
  cmd->add_option("--tol-mode", o.tol_mode, "solver tolerance: fixed|formula")
      ->capture_default_str()
      ->check(CLI::IsMember({"fixed", "formula"}));
  cmd->add_option("--solver-tol", o.solver_tol, "tolerance in fixed mode")->capture_default_str();
  cmd->add_option("--hull-cap", o.hull_cap, "hull member cap, 0 = none")->capture_default_str();
  cmd->add_option("--tracking", o.tracking, "Kirchhoff tracking: auto|dense|solver")
      ->capture_default_str()
      ->check(CLI::IsMember({"auto", "dense", "solver"}));
  cmd->add_option("--cache-dir", o.cache_dir, "embedding cache directory");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("KOPT_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("KOPT_SEED is not an unsigned integer: ") + env);
  }
  return 0;
}

kopt::AlgoParams to_params(const RunOptions& o, std::size_t k) {
  kopt::AlgoParams p;
  p.k = k;
  p.epsilon = o.epsilon;
  p.mu = o.mu;
  p.beta = o.beta;
  p.delta = o.delta;
  p.seed = resolve_seed(o.seed);
  p.c_jl = o.c_jl;
  p.prune = !o.no_prune;
  p.tol_mode = o.tol_mode == "formula" ? kopt::TolMode::Formula : kopt::TolMode::Fixed;
  p.fixed_tol = o.solver_tol;
  p.max_hull_members = o.hull_cap;
  p.tracking = o.tracking == "dense"    ? kopt::TrackMode::Dense
               : o.tracking == "solver" ? kopt::TrackMode::Solver
                                        : kopt::TrackMode::Auto;
  p.cache_dir = o.cache_dir;
  if (!(p.c_jl > 0.0)) throw UsageError("--c-jl must be positive");
  if (!(p.fixed_tol > 0.0 && p.fixed_tol < 1.0)) throw UsageError("--solver-tol must lie in (0, 1)");
  try {
    kopt::resolve(p);
  } catch (const kopt::InvalidArgument& e) {
    throw UsageError(e.what());
  }
  return p;
}

kopt::Algo to_algo(const std::string& name) {
  try {
    return kopt::parse_algo(name);
  } catch (const kopt::InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

kopt::Graph load_graph(const std::string& path) {
  return kopt::load_edge_list_file(path).graph;
}

// Writes through `path` or stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int cmd_prepare(const std::string& input, const std::string& output) {
  const auto loaded = kopt::load_edge_list_file(input);
  const kopt::Graph lcc = kopt::largest_connected_component(loaded.graph);
  Sink sink(output);
  kopt::write_edge_list(sink.out(), lcc);
  std::cerr << "input: " << input << "\n"
            << "nodes: " << loaded.graph.n() << "\n"
            << "edges: " << loaded.graph.m() << "\n"
            << "dropped: " << loaded.stats.dropped() << " (self-loops "
            << loaded.stats.self_loops << ", duplicates " << loaded.stats.duplicates << ")\n"
            << "n: " << lcc.n() << "\n"
            << "m: " << lcc.m() << "\n";
  return 0;
}

int cmd_run(const std::string& input, const RunOptions& o, std::size_t k,
            const std::string& format, const std::string& output) {
  const kopt::Algo algo = to_algo(o.algo);
  const kopt::AlgoParams p = to_params(o, k);
  const kopt::Graph g = load_graph(input);
  if (g.n() >= 2 && k > g.candidate_count())
    throw UsageError("k = " + std::to_string(k) + " exceeds the " +
                     std::to_string(g.candidate_count()) + " candidate edges");
  const auto r = kopt::run_algorithm(algo, g, p);
  for (const auto& w : r.diagnostics.warnings) std::cerr << "warning: " << w << "\n";
  Sink sink(output);
  if (format == "csv")
    kopt::write_result_csv(sink.out(), r, g);
  else
    sink.out() << kopt::result_to_json(r, g).dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& scale, double fault) {
  if (fault != 0.0) kopt::testing::set_pinv_fault(fault);
  const auto s = scale == "desk" ? kopt::verify::Scale::Desk : kopt::verify::Scale::Tiny;
  const auto checks = kopt::verify::run_suite(s, [](const kopt::verify::Check& c) {
    std::cout << kopt::verify::format_check(c) << std::endl;
  });
  const std::size_t failed = kopt::verify::failures(checks);
  std::cout << (failed == 0 ? "verify: all checks passed" : "verify: " + std::to_string(failed) +
                                                                 " check(s) failed")
            << std::endl;
  return failed == 0 ? 0 : kRuntimeFailure;
}

int cmd_bench(const std::vector<std::string>& inputs, const std::vector<std::string>& algos,
              std::vector<std::size_t> ks, const RunOptions& o, const std::string& output) {
  std::vector<kopt::Algo> parsed;
  for (const auto& a : algos) parsed.push_back(to_algo(a));
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (!ks.empty() && ks.front() == 0) throw UsageError("budgets must be positive");
  const kopt::AlgoParams base = to_params(o, ks.empty() ? 1 : ks.back());
  Sink sink(output);
  kopt::write_bench_header(sink.out());
  int status = 0;
  if (ks.empty()) return 0;
  for (const auto& input : inputs) {
    const std::string name = std::filesystem::path(input).stem().string();
    std::optional<kopt::Graph> g;
    try {
      g = load_graph(input);
    } catch (const std::exception& e) {
      std::cerr << "bench: " << input << ": " << e.what() << "\n";
      status = kRuntimeFailure;
      continue;
    }
    for (kopt::Algo a : parsed) {
      std::vector<std::size_t> written;
      auto emit = [&](const kopt::BenchRow& row) {
        kopt::write_bench_row(sink.out(), row);
        written.push_back(row.k);
      };
      try {
        if (a == kopt::Algo::Brute) {
          // The optimum is not prefix-closed, so every budget is its own run.
          for (std::size_t k : ks) {
            kopt::AlgoParams p = base;
            p.k = k;
            const auto r = kopt::run_algorithm(a, *g, p);
            for (const auto& row : kopt::bench_rows(r, name, {k})) emit(row);
          }
        } else {
          // Budgets above the candidate count are reported as errors below.
          kopt::AlgoParams p = base;
          p.k = 0;
          for (std::size_t k : ks)
            if (k <= g->candidate_count()) p.k = k;
          if (p.k < ks.back())
            std::cerr << "bench: " << name << "/" << kopt::algo_name(a) << ": budgets above "
                      << g->candidate_count() << " candidate edges skipped\n";
          if (p.k == 0) throw kopt::InvalidArgument("no budget fits the candidate count");
          const auto r = kopt::run_algorithm(a, *g, p);
          for (const auto& row : kopt::bench_rows(r, name, ks)) emit(row);
        }
      } catch (const std::exception& e) {
        std::cerr << "bench: " << name << "/" << kopt::algo_name(a) << ": " << e.what() << "\n";
      }
      for (std::size_t k : ks) {
        if (std::find(written.begin(), written.end(), k) != written.end()) continue;
        kopt::BenchRow row;
        row.graph = name;
        row.algo = std::string(kopt::algo_name(a));
        row.k = k;
        row.n = g->n();
        row.m = g->m();
        row.kirchhoff = std::nan("");
        row.total_ms = std::nan("");
        row.status = "error";
        kopt::write_bench_row(sink.out(), row);
        status = kRuntimeFailure;
      }
      sink.out().flush();
    }
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kirchhoff index minimization by edge addition"};
  app.require_subcommand(1);

  std::string prep_in, prep_out;
  auto* prepare = app.add_subcommand("prepare", "keep the largest connected component");
  prepare->add_option("input", prep_in, "edge list")->required();
  prepare->add_option("--output,-o", prep_out, "output edge list (default stdout)");

  RunOptions run_opts;
  std::string run_in, run_format = "json", run_out;
  std::size_t run_k = 50;
  auto* run = app.add_subcommand("run", "select k edges with one algorithm");
  run->add_option("input", run_in, "connected edge list")->required();
  run->add_option("--k,-k", run_k, "edge budget")->capture_default_str()->check(CLI::PositiveNumber);
  add_run_options(run, run_opts, true);
  run->add_option("--format,-f", run_format, "json|csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));
  run->add_option("--output,-o", run_out, "output file (default stdout)");

  std::string verify_scale = "tiny";
  double fault = 0.0;
  auto* verify = app.add_subcommand("verify", "oracle equivalence and bound suites");
  verify->add_option("scale", verify_scale, "tiny|desk")
      ->capture_default_str()
      ->check(CLI::IsMember({"tiny", "desk"}));
  verify->add_option("--inject-fault", fault, "perturb L+ by this amount (test hook)");

  RunOptions bench_opts;
  std::vector<std::string> bench_in, bench_algos{"deter"};
  std::vector<std::size_t> bench_ks;
  std::string bench_out;
  auto* bench = app.add_subcommand("bench", "sweep inputs, algorithms and budgets to CSV");
  bench->add_option("inputs", bench_in, "connected edge lists");
  bench->add_option("--algos", bench_algos, "algorithms")->delimiter(',')->capture_default_str();
  bench->add_option("--ks", bench_ks, "budgets, e.g. 10,20,30")->delimiter(',');
  add_run_options(bench, bench_opts, false);
  bench->add_option("--output,-o", bench_out, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    if (*prepare) return cmd_prepare(prep_in, prep_out);
    if (*run) return cmd_run(run_in, run_opts, run_k, run_format, run_out);
    if (*verify) return cmd_verify(verify_scale, fault);
    if (*bench) return cmd_bench(bench_in, bench_algos, bench_ks, bench_opts, bench_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeFailure;
  }
  return kUsageError;
}

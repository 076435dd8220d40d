// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#include "scenopt/empirics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "scenopt/circle_example.hpp"

namespace scenopt {

ScenarioSolver cutting_plane_solver(SolverOptions options) {
  options.identify_support = false;
  return [options](const UncertainProgram& program, const ScenarioSet& scenarios) {
    return solve_scp(program, scenarios, options);
  };
}

ScenarioSolver solver_for(const Problem& problem) {
  if (problem.program.name.rfind("circle", 0) == 0) {
    return [](const UncertainProgram&, const ScenarioSet& scenarios) {
      return solve_circle_analytic(scenarios);
    };
  }
  return cutting_plane_solver();
}

double robust_value(const Problem& problem) {
  if (problem.metadata.robust_optimum) return *problem.metadata.robust_optimum;
  if (!problem.metadata.robust_sup) {
    throw std::domain_error("robust_value needs either a known optimum or a robust_sup oracle");
  }
  ScenarioSolution sol = solve_robust(problem.program, problem.metadata);
  if (sol.status != SolveStatus::optimal) {
    throw std::runtime_error("robust solve did not converge for " + problem.program.name);
  }
  return sol.objective;
}

std::vector<double> sample_g_values(const Problem& problem, const ScenarioSolver& solver,
                                    int N, int trials, std::uint64_t seed) {
  if (N < 0 || trials < 1) throw std::domain_error("sample_g_values: bad N or trials");
  std::vector<double> g(trials);
  std::vector<char> failed(trials, 0);  // flag instead of throwing across threads
  parallel_for(trials, [&](int t) {
    ScenarioSet set = sample_scenarios(problem.program, N, seed, static_cast<std::uint64_t>(t));
    ScenarioSolution sol = solver(problem.program, set);
    if (sol.status != SolveStatus::optimal) {
      failed[t] = 1;
      return;
    }
    g[t] = sol.objective;
  });
  for (int t = 0; t < trials; ++t) {
    if (failed[t]) throw std::runtime_error("sampled solve failed in trial " + std::to_string(t));
  }
  return g;
}

TailEstimate estimate_tail(const Problem& problem, const ScenarioSolver& solver, int N,
                           int trials, std::uint64_t master_seed) {
  TailEstimate tail;
  tail.g_values = sample_g_values(problem, solver, N, trials, master_seed);
  std::sort(tail.g_values.begin(), tail.g_values.end());
  tail.N = N;
  tail.T = trials;
  tail.master_seed = master_seed;
  tail.robust_value = robust_value(problem);
  return tail;
}

double p_hat(const TailEstimate& tail, double alpha) {
  // #{ g >= robust - alpha } via binary search in the sorted values.
  const double threshold = tail.robust_value - alpha;
  const auto it = std::lower_bound(tail.g_values.begin(), tail.g_values.end(), threshold);
  return static_cast<double>(tail.g_values.end() - it) / tail.g_values.size();
}

double empirical_optimal_ulb(const TailEstimate& tail, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::domain_error("empirical_optimal_ulb wants epsilon in [0,1]");
  }
  const int T = static_cast<int>(tail.g_values.size());
  int rank = static_cast<int>(std::ceil((1.0 - epsilon) * T));
  rank = std::clamp(rank, 1, T);
  return std::max(0.0, tail.robust_value - tail.g_values[rank - 1]);
}

double estimate_gstar(const Problem& problem, const ScenarioSolver& solver, int k,
                      int trials, std::uint64_t seed) {
  if (k < 1 || trials < 1) throw std::domain_error("estimate_gstar: bad k or trials");
  std::vector<double> best(trials);
  parallel_for(trials, [&](int t) {
    const std::uint64_t stream =
        (static_cast<std::uint64_t>(k) << 32) | static_cast<std::uint64_t>(t);
    ScenarioSet set = sample_scenarios(problem.program, k, seed, stream);
    best[t] = solver(problem.program, set).objective;
  });
  return *std::max_element(best.begin(), best.end());
}

std::optional<int> complexity_probe(const Problem& problem, const ScenarioSolver& solver,
                                    int k_max, int trials, double tol, std::uint64_t seed) {
  if (k_max < 1) throw std::domain_error("complexity_probe: k_max must be >= 1");
  const double target = robust_value(problem) - tol;
  for (int k = 1; k <= k_max; ++k) {
    if (estimate_gstar(problem, solver, k, trials, seed) >= target) return k;
  }
  return std::nullopt;
}

double hit_all_simulation(int k, double epsilon, int N, int trials, std::uint64_t seed) {
  if (k < 1 || k > 63) throw std::domain_error("hit_all_simulation: k must be in [1, 63]");
  if (!(epsilon > 0.0 && epsilon * k <= 1.0)) {
    throw std::domain_error("hit_all_simulation: needs epsilon > 0 with k * epsilon <= 1");
  }
  if (N < 1 || trials < 1) throw std::domain_error("hit_all_simulation: bad N or trials");

  const std::uint64_t full = (1ULL << k) - 1ULL;
  long hits = 0;
  for (int t = 0; t < trials; ++t) {
    RngStream rng(seed, static_cast<std::uint64_t>(t));
    std::uint64_t mask = 0;
    for (int i = 0; i < N; ++i) {
      const int cell = static_cast<int>(rng.uniform01() / epsilon);
      if (cell < k) {
        mask |= 1ULL << cell;
        if (mask == full) break;
      }
    }
    if (mask == full) ++hits;
  }
  return static_cast<double>(hits) / trials;
}

CoverageReport validate_certificate(const Problem& problem, const ScenarioSolver& solver,
                                    const UlbCertificate& certificate, int trials,
                                    std::uint64_t seed) {
  if (!(certificate.beta > 0.0 && certificate.beta < 1.0)) {
    throw std::domain_error("certificate beta must lie in (0,1)");
  }
  if (certificate.alpha < 0.0) {
    throw std::domain_error("certificate alpha must be nonnegative");
  }

  const double robust = robust_value(problem);
  const std::vector<double> g =
      sample_g_values(problem, solver, certificate.N, trials, seed);
  long covered = 0;
  for (double value : g) {
    if (robust - value <= certificate.alpha) ++covered;
  }

  CoverageReport report;
  report.target = 1.0 - certificate.beta;
  report.trials = trials;
  report.achieved = static_cast<double>(covered) / trials;
  const double p = report.achieved;
  report.stderr_est =
      (p <= 0.0 || p >= 1.0) ? 0.5 / std::sqrt(trials) : std::sqrt(p * (1.0 - p) / trials);
  report.pass = report.achieved >= report.target - 3.0 * report.stderr_est;
  return report;
}

}  // namespace scenopt

// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo side of the toolkit: everything here estimates, from repeated
// sampled solves, the quantities the analytic modules bound — tail
// probabilities of the sampled optimum, coverage of certificates, support
// complexity, hit-all probabilities.  All routines are deterministic
// functions of (master seed, structural arguments): trial t always consumes
// stream t (or a documented composite id), never "the next" stream, so
// results do not depend on scheduling.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "scenopt/problem.hpp"
#include "scenopt/sensitivity.hpp"
#include "scenopt/solver.hpp"

namespace scenopt {

// Strategy hook: the studies never hard-code how a sampled program is
// solved, so the heavy ones can run a closed-form solver where one exists
// while the general path stays available.
using ScenarioSolver =
    std::function<ScenarioSolution(const UncertainProgram&, const ScenarioSet&)>;

// General-purpose backend (support identification off: the studies only
// consume objective values).
ScenarioSolver cutting_plane_solver(SolverOptions options = {});

// Closed-form solver for the circle family, cutting-plane backend otherwise.
ScenarioSolver solver_for(const Problem& problem);

// The robust optimum: the metadata value when known, otherwise one solve
// against the robust_sup oracle.
double robust_value(const Problem& problem);

// Objective values of `trials` independent sampled programs with N scenarios
// each; entry t comes from scenario stream t.  A failed solve reports its
// trial index (dropping trials would bias every downstream estimate).
std::vector<double> sample_g_values(const Problem& problem, const ScenarioSolver& solver,
                                    int N, int trials, std::uint64_t seed);

// Empirical tail of the optimality gap.
struct TailEstimate {
  std::vector<double> g_values;  // sorted ascending, size T
  int N = 0;                     // scenarios per trial
  int T = 0;                     // trial count
  std::uint64_t master_seed = 0;
  double robust_value = 0.0;  // the J* the gaps are measured against
};

TailEstimate estimate_tail(const Problem& problem, const ScenarioSolver& solver, int N,
                           int trials, std::uint64_t master_seed);

// Fraction of trials whose gap is within alpha: #{ robust - alpha <= g_t }/T
// (non-strict comparison).  Nondecreasing in alpha.
double p_hat(const TailEstimate& tail, double alpha);

// Largest margin the empirical tail certifies at violation level eps: with
// r = ceil((1-eps) T) clamped to [1, T], returns max(0, robust - g_(r)),
// g_(r) the r-th smallest value.  Ties resolve toward the smaller
// (conservative) margin.
double empirical_optimal_ulb(const TailEstimate& tail, double epsilon);

// Best sampled optimum over `trials` programs of k scenarios each: a lower
// estimate (nondecreasing in trials) of the supremum of the sampled optimum
// over k-point scenario sets.  Trial t uses stream (k << 32) | t so
// different k never share draws.
double estimate_gstar(const Problem& problem, const ScenarioSolver& solver, int k,
                      int trials, std::uint64_t seed);

// Smallest k <= k_max whose estimate_gstar reaches robust_value(problem) -
// tol; nullopt when even k_max falls short.  Sampling evidence for the
// instance's support complexity, not a proof: for tol > 0 the reported k can
// only overestimate the true threshold, never undershoot it.
std::optional<int> complexity_probe(const Problem& problem, const ScenarioSolver& solver,
                                    int k_max, int trials, double tol, std::uint64_t seed);

// Probability that N uniform draws on [0,1) land in every one of the k
// disjoint intervals [j eps, (j+1) eps), estimated over `trials` rounds.
// The complement of this event is exactly what the inclusion-exclusion bound
// computes for this geometry, which makes it a sharp Monte Carlo cross-check
// of both bound families.
double hit_all_simulation(int k, double epsilon, int N, int trials, std::uint64_t seed);

struct CoverageReport {
  double target = 0.0;      // nominal coverage 1 - beta
  double achieved = 0.0;    // fraction of trials with robust - g <= alpha
  double stderr_est = 0.0;  // binomial standard error
  int trials = 0;
  bool pass = false;  // achieved >= target - 3 * stderr_est
};

// Replays `trials` sampled programs (trial t = stream t) and measures how
// often the certificate's margin covers the realized gap.  stderr_est is
// sqrt(p(1-p)/T); at the degenerate edges p in {0,1} it falls back to
// 0.5/sqrt(T) so the three-sigma verdict never collapses to an exact-zero
// band.
CoverageReport validate_certificate(const Problem& problem, const ScenarioSolver& solver,
                                    const UlbCertificate& certificate, int trials,
                                    std::uint64_t seed);

}  // namespace scenopt

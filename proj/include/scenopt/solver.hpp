// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "scenopt/problem.hpp"

namespace scenopt {

struct SolverOptions {
  // Terminate when the worst constraint violation at the LP iterate is below
  // this.  The iterate is then optimal for an outer relaxation, so the
  // reported objective can undershoot the exact sampled optimum by at most
  // O(problem scale) * feasibility_tol.
  double feasibility_tol = 1e-9;
  // A scenario counts as support when removing it improves the objective by
  // more than this.
  double objective_tol = 1e-8;
  // Scenarios with constraint value below -active_window at the optimum are
  // inactive and skipped by support identification.
  double active_window = 1e-7;
  int max_iterations = 10000;
  double fd_step = 1e-7;  // central finite-difference step for subgradients
  bool identify_support = true;
};

enum class SolveStatus { optimal, max_iter, infeasible };

struct ScenarioSolution {
  SolveStatus status = SolveStatus::infeasible;
  Eigen::VectorXd x_star;
  double objective = 0.0;  // c'x_star
  int iterations = 0;      // number of LP solves
  // Residual worst-case constraint violation at the returned point: at most
  // feasibility_tol when status == optimal, informative otherwise.
  double certificate_gap = 0.0;
  // Scenarios whose removal strictly improves the optimum (0-based indices
  // into the scenario set, ascending).  Filled when
  // options.identify_support and status == optimal.
  std::vector<int> support_indices;
};

// Solves the sampled convex program
//
//   min c'x  s.t.  lower <= x <= upper,  constraint(x, delta_i) <= 0 for all i
//
// by Kelley's cutting-plane method: iterate LP relaxations over the box plus
// accumulated cuts, each cut being the first-order (finite-difference)
// linearization of the most violated scenario constraint at the current LP
// iterate.  For constraints that are piecewise linear in x the loop is
// finite; for smooth ones it converges linearly and stops at feasibility_tol.
// The terminating iterate solves the final relaxation, so its objective is
// simultaneously incumbent and lower bound (cutting-plane gap 0).
ScenarioSolution solve_scp(const UncertainProgram& program, const ScenarioSet& scenarios,
                           const SolverOptions& options = {});

// Number of support scenarios found by the removal test; convexity caps it at
// the decision dimension.
int count_support(const UncertainProgram& program, const ScenarioSet& scenarios,
                  const SolverOptions& options = {});

// Same loop run against metadata.robust_sup instead of sampled constraints,
// i.e. minimizes c'x over the box subject to the worst case over the whole
// uncertainty support.  Requires the oracle to be present.  Support
// identification does not apply.
ScenarioSolution solve_robust(const UncertainProgram& program, const ProblemMetadata& metadata,
                              const SolverOptions& options = {});

}  // namespace scenopt

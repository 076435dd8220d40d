// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#include "scenopt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

#include "scenopt/simplex.hpp"

namespace scenopt {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Worst constraint value at x together with a tag saying which piece attained
// it, so the caller can linearize exactly that piece.
using WorstOracle = std::function<std::pair<double, int>(const VectorXd&)>;
using PieceEval = std::function<double(const VectorXd&, int)>;

VectorXd fd_gradient(const PieceEval& piece, const VectorXd& x, int tag, double h) {
  VectorXd g(x.size());
  VectorXd probe = x;
  for (int j = 0; j < x.size(); ++j) {
    probe(j) = x(j) + h;
    const double up = piece(probe, tag);
    probe(j) = x(j) - h;
    const double dn = piece(probe, tag);
    probe(j) = x(j);
    g(j) = (up - dn) / (2.0 * h);
  }
  return g;
}

ScenarioSolution kelley_minimize(const VectorXd& c, const VectorXd& lower,
                                 const VectorXd& upper, const WorstOracle& worst,
                                 const PieceEval& piece, int num_pieces,
                                 const SolverOptions& options) {
  const int d = static_cast<int>(c.size());
  ScenarioSolution out;

  // Work in shifted coordinates y = x - lower >= 0; box rows keep y <= span.
  const VectorXd span = upper - lower;
  if ((span.array() < 0).any()) {
    throw std::domain_error("solver: box has lower > upper");
  }
  if (options.max_iterations < 1) {
    throw std::domain_error("solver: max_iterations must be >= 1");
  }

  std::vector<VectorXd> cut_g;
  std::vector<double> cut_rhs;  // in x coordinates: g'x <= rhs
  VectorXd x_prev;
  int stalled = 0;
  bool rebuilt = false;

  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const int rows = d + static_cast<int>(cut_g.size());
    MatrixXd A = MatrixXd::Zero(rows, d);
    VectorXd b(rows);
    A.topLeftCorner(d, d).setIdentity();
    b.head(d) = span;
    for (size_t k = 0; k < cut_g.size(); ++k) {
      A.row(d + k) = cut_g[k].transpose();
      b(d + k) = cut_rhs[k] - cut_g[k].dot(lower);
    }

    LpSolution lp = solve_lp(A, b, c);
    out.iterations = iter;
    if (lp.status != LpStatus::optimal) {
      // Unbounded cannot happen over a box; infeasible would mean a cut
      // sliced off the whole box, which valid linearizations of a feasible
      // program never do.  Surface it rather than guessing.
      out.status = SolveStatus::infeasible;
      return out;
    }

    const VectorXd x = lp.x + lower;
    const auto [viol, tag] = worst(x);
    out.x_star = x;
    out.objective = c.dot(x);
    if (viol <= options.feasibility_tol) {
      out.status = SolveStatus::optimal;
      out.certificate_gap = 0.0;
      return out;
    }

    // A frozen iterate means the worst piece, and therefore the cut, repeats
    // verbatim: finite-difference rounding (about 1e-16/fd_step of the piece
    // scale) has made cuts anchored far away mutually inconsistent, and the
    // LP keeps returning the same least-infeasible vertex.  More cuts only
    // duplicate rows, so rebuild the model once with every piece linearized
    // at this point -- anchored that close to the optimum the rounding term
    // is negligible -- and stop with the residual violation if it still
    // cannot finish.
    if (x_prev.size() == d && (x - x_prev).lpNorm<Eigen::Infinity>() <=
                                  1e-13 * (1.0 + x.lpNorm<Eigen::Infinity>())) {
      if (++stalled >= 3) {
        if (rebuilt || num_pieces < 1) {
          out.status = SolveStatus::max_iter;
          out.certificate_gap = viol;
          return out;
        }
        rebuilt = true;
        stalled = 0;
        cut_g.clear();
        cut_rhs.clear();
        for (int tg = 0; tg < num_pieces; ++tg) {
          VectorXd gr = fd_gradient(piece, x, tg, options.fd_step);
          if (gr.lpNorm<Eigen::Infinity>() < 1e-13) continue;
          cut_g.push_back(std::move(gr));
          cut_rhs.push_back(cut_g.back().dot(x) - piece(x, tg));
        }
        x_prev.resize(0);
        continue;
      }
    } else {
      stalled = 0;
    }
    x_prev = x;

    VectorXd g = fd_gradient(piece, x, tag, options.fd_step);
    if (g.lpNorm<Eigen::Infinity>() < 1e-13) {
      // A flat violated piece cannot be cut; stop rather than loop.
      out.status = SolveStatus::max_iter;
      out.certificate_gap = viol;
      return out;
    }
    // piece(x) + g'(z - x) <= 0  =>  g'z <= g'x - piece value.
    cut_g.push_back(std::move(g));
    cut_rhs.push_back(cut_g.back().dot(x) - viol);
  }

  out.status = SolveStatus::max_iter;
  out.certificate_gap = worst(out.x_star).first;
  return out;
}

}  // namespace

ScenarioSolution solve_scp(const UncertainProgram& program, const ScenarioSet& scenarios,
                           const SolverOptions& options) {
  const auto& samples = scenarios.samples;
  WorstOracle worst = [&](const VectorXd& x) {
    double best = -std::numeric_limits<double>::infinity();
    int tag = -1;
    for (size_t i = 0; i < samples.size(); ++i) {
      const double v = program.constraint(x, samples[i]);
      if (v > best) {
        best = v;
        tag = static_cast<int>(i);
      }
    }
    if (tag < 0) return std::make_pair(-std::numeric_limits<double>::infinity(), -1);
    return std::make_pair(best, tag);
  };
  PieceEval piece = [&](const VectorXd& x, int tag) {
    return program.constraint(x, samples[tag]);
  };

  ScenarioSolution sol = kelley_minimize(program.c, program.lower, program.upper, worst,
                                         piece, static_cast<int>(samples.size()), options);

  if (options.identify_support && sol.status == SolveStatus::optimal && !samples.empty()) {
    SolverOptions inner = options;
    inner.identify_support = false;
    ScenarioSet reduced;
    reduced.master_seed = scenarios.master_seed;
    reduced.stream_id = scenarios.stream_id;
    for (size_t i = 0; i < samples.size(); ++i) {
      if (program.constraint(sol.x_star, samples[i]) < -options.active_window) {
        continue;  // inactive scenarios never carry the optimum
      }
      reduced.samples.clear();
      reduced.samples.reserve(samples.size() - 1);
      for (size_t j = 0; j < samples.size(); ++j) {
        if (j != i) reduced.samples.push_back(samples[j]);
      }
      ScenarioSolution without = solve_scp(program, reduced, inner);
      if (without.status == SolveStatus::optimal &&
          without.objective < sol.objective - options.objective_tol) {
        sol.support_indices.push_back(static_cast<int>(i));
      }
    }
  }
  return sol;
}

int count_support(const UncertainProgram& program, const ScenarioSet& scenarios,
                  const SolverOptions& options) {
  SolverOptions opts = options;
  opts.identify_support = true;
  ScenarioSolution sol = solve_scp(program, scenarios, opts);
  if (sol.status != SolveStatus::optimal) {
    throw std::runtime_error("count_support: solve did not reach optimality");
  }
  return static_cast<int>(sol.support_indices.size());
}

ScenarioSolution solve_robust(const UncertainProgram& program, const ProblemMetadata& metadata,
                              const SolverOptions& options) {
  if (!metadata.robust_sup) {
    throw std::domain_error("solve_robust needs a robust_sup oracle in the metadata");
  }
  WorstOracle worst = [&](const VectorXd& x) {
    return std::make_pair(metadata.robust_sup(x), 0);
  };
  PieceEval piece = [&](const VectorXd& x, int) { return metadata.robust_sup(x); };
  SolverOptions opts = options;
  opts.identify_support = false;
  return kelley_minimize(program.c, program.lower, program.upper, worst, piece, 1, opts);
}

}  // namespace scenopt

// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scenopt/rng.hpp"

namespace scenopt {

// Thrown when a certification step needs a structural property the problem
// instance does not provide (regularity of the uncertainty measure = 4,
// strict feasibility / Slater = 5, Lipschitz dependence on the uncertainty
// = 6).  The numbering is part of the CLI contract.
class assumption_error : public std::runtime_error {
 public:
  assumption_error(int number, const std::string& detail)
      : std::runtime_error("Assumption " + std::to_string(number) +
                           " violated: " + detail),
        number_(number) {}
  int number() const { return number_; }

 private:
  int number_;
};

// Lower bound on the measure of metric balls in the uncertainty space:
// P{ dist(delta, delta0) <= r } >= value(r) for every delta0 in the support.
// value must be strictly increasing and continuous with value(0) = 0, and
// inverse its exact inverse.
struct RegularityPhi {
  std::function<double(double)> value;    // radius -> probability
  std::function<double(double)> inverse;  // probability -> radius
};

// Uncertain convex program
//
//   min  c'x   over the box  lower <= x <= upper
//   s.t. constraint(x, delta) <= 0  for the realizations delta in play,
//
// with constraint(., delta) convex for every delta.  The uncertainty lives in
// an m-dimensional ambient space; sample draws it from its distribution and
// metric measures distances on its support.  perturb moves a point along the
// support by a metric distance of at most its second argument (used to probe
// Lipschitz behaviour of sampled optima).
struct UncertainProgram {
  std::string name;
  int d = 0;  // decision dimension
  int m = 0;  // ambient uncertainty dimension
  Eigen::VectorXd c;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> constraint;
  std::function<Eigen::VectorXd(RngStream&)> sample;
  std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)> metric;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&, double, RngStream&)> perturb;
};

// Structural facts about an instance that certification relies on.  Optional
// fields are absent when the instance genuinely lacks the property, in which
// case consumers raise assumption_error with the matching number.
struct ProblemMetadata {
  std::optional<Eigen::VectorXd> slater_point;  // strictly robustly feasible x0
  std::optional<double> slater_margin;          // sup_delta constraint(x0, delta) < 0
  std::optional<double> lipschitz_L_delta;      // uniform constraint Lipschitz constant
  std::optional<RegularityPhi> regularity;
  // sup over the uncertainty support of constraint(x, .); empty when no
  // tractable oracle exists.
  std::function<double(const Eigen::VectorXd&)> robust_sup;
  std::optional<double> robust_optimum;  // known closed-form robust value
};

struct Problem {
  UncertainProgram program;
  ProblemMetadata metadata;
};

// Instance registry.  Accepted names:
//   "circle"          planar example; no strictly feasible point exists, so
//                     slater_point/slater_margin are absent
//   "circle-relaxed"  same constraint with the box widened to [-1,1]x[-2,2],
//                     which restores strict feasibility at (0, 2)
//   "affine:<seed>"   randomly generated instance with constraint affine in
//                     the uncertainty, delta on the unit sphere (m in {2,3},
//                     d in {2,3,4}); reproducible from the seed
// Throws std::domain_error for anything else.
Problem make_problem(const std::string& name);

// An i.i.d. draw of N scenarios, tagged with the keys that generated it so a
// set can be reproduced or extended.
struct ScenarioSet {
  std::vector<Eigen::VectorXd> samples;
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;
};

ScenarioSet sample_scenarios(const UncertainProgram& program, int count,
                             std::uint64_t master_seed, std::uint64_t stream_id);

}  // namespace scenopt

// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
//
// The closed-form solution is checked against a brute-force scan over the
// first coordinate (the second is determined by feasibility), the cap
// measures against direct Monte Carlo on the circle, and the certified
// margin curves against fresh empirical tails.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "scenopt/bounds.hpp"
#include "scenopt/circle_example.hpp"
#include "scenopt/empirics.hpp"
#include "scenopt/problem.hpp"
#include "scenopt/rng.hpp"

using scenopt::BoundFamily;
using scenopt::ScenarioSet;

namespace {
constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

ScenarioSet set_from_angles(const std::vector<double>& angles) {
  ScenarioSet set;
  for (double a : angles) {
    Eigen::VectorXd v(2);
    v << std::cos(a), std::sin(a);
    set.samples.push_back(v);
  }
  return set;
}

// Independent oracle: for fixed scenarios the optimal x2 given x1 is the
// largest |x1 + eta_i|, so scan x1 over a fine grid of [-1, 1].  The scanned
// minimum sits above the true optimum by at most half the grid spacing,
// because the inner function has slope at most 1 in x1.
constexpr double kScanSpacing = 1e-5;

double brute_force_objective(const ScenarioSet& set) {
  double best = 1e300;
  const int steps = static_cast<int>(2.0 / kScanSpacing) + 1;
  for (int j = 0; j < steps; ++j) {
    const double x1 = -1.0 + 2.0 * j / (steps - 1);
    double x2 = 0.0;
    for (const auto& s : set.samples) x2 = std::max(x2, std::abs(x1 + s(0) + s(1)));
    best = std::min(best, x2);
  }
  return best;
}
}  // namespace

TEST_CASE("closed form matches a brute-force scan over x1") {
  auto prob = scenopt::make_problem("circle");
  for (int trial = 0; trial < 12; ++trial) {
    const int N = 1 + trial * 4;
    auto set = scenopt::sample_scenarios(prob.program, N, 600 + trial, trial);
    const auto sol = scenopt::solve_circle_analytic(set);
    const double scan = brute_force_objective(set);
    // The scan is a restricted minimum, so it can only sit above the true
    // optimum, and by at most the grid resolution times the unit slope.
    CHECK(sol.objective <= scan + 1e-12);
    CHECK(sol.objective >= scan - kScanSpacing);
    // Feasibility of the closed form for every scenario.
    for (const auto& s : set.samples) {
      CHECK(std::abs(sol.x_star(0) + s(0) + s(1)) <= sol.x_star(1) + 1e-12);
    }
    CHECK(std::abs(sol.x_star(0)) <= 1.0);
  }
}

TEST_CASE("clamped cases still match the scan") {
  // All etas far on one side force x1 onto the box edge.
  auto set = set_from_angles({kPi / 4, kPi / 4 + 0.05, kPi / 4 - 0.08});
  const auto sol = scenopt::solve_circle_analytic(set);
  CHECK(sol.x_star(0) == -1.0);
  CHECK(sol.objective == doctest::Approx(brute_force_objective(set)).epsilon(1e-6));

  // Mirror image clamps to +1.
  auto mirror = set_from_angles({kPi + kPi / 4, kPi + kPi / 4 + 0.05});
  CHECK(scenopt::solve_circle_analytic(mirror).x_star(0) == 1.0);
}

TEST_CASE("hand-solved scenario sets") {
  // Single scenario at the worst-case angle: eta = sqrt(2).
  auto one = set_from_angles({kPi / 4});
  auto sol1 = scenopt::solve_circle_analytic(one);
  CHECK(sol1.objective == doctest::Approx(kSqrt2 - 1.0));
  CHECK(sol1.x_star(0) == -1.0);
  CHECK(sol1.support_indices == std::vector<int>{0});

  // Antipodal pair: the sampled program equals the robust one.
  auto pair = set_from_angles({kPi / 4, kPi / 4 + kPi});
  auto sol2 = scenopt::solve_circle_analytic(pair);
  CHECK(sol2.objective == doctest::Approx(kSqrt2));
  CHECK(sol2.x_star(0) == doctest::Approx(0.0).scale(1.0));
  CHECK(sol2.support_indices == std::vector<int>{0, 1});

  // Empty set falls to the box floor.
  ScenarioSet empty;
  auto sol0 = scenopt::solve_circle_analytic(empty);
  CHECK(sol0.objective == doctest::Approx(-kSqrt2));
  CHECK(sol0.support_indices.empty());

  // Interior three-scenario case: support is the extreme pair only.
  auto angle_for_eta = [](double eta) { return std::asin(eta / kSqrt2) - kPi / 4; };
  auto three =
      set_from_angles({angle_for_eta(0.9), angle_for_eta(0.1), angle_for_eta(-0.7)});
  auto sol3 = scenopt::solve_circle_analytic(three);
  CHECK(sol3.objective == doctest::Approx(0.8));  // (0.9 + 0.7) / 2
  CHECK(sol3.x_star(0) == doctest::Approx(-0.1));
  CHECK(sol3.support_indices == std::vector<int>{0, 2});
}

TEST_CASE("the sampled optimum never exceeds the robust value") {
  auto prob = scenopt::make_problem("circle");
  for (int trial = 0; trial < 30; ++trial) {
    auto set = scenopt::sample_scenarios(prob.program, 5 + trial, 7000 + trial, 0);
    CHECK(scenopt::solve_circle_analytic(set).objective <= kSqrt2 + 1e-12);
  }
}

TEST_CASE("measure_cap evaluates the arc fraction") {
  CHECK(scenopt::measure_cap(0.0) == 0.0);
  CHECK(scenopt::measure_cap(kSqrt2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(scenopt::measure_cap(2.0 * kSqrt2) == doctest::Approx(1.0).epsilon(1e-15));
  // Depth sqrt(2) - 1 leaves the cap where eta >= 1: a quarter of the circle.
  CHECK(scenopt::measure_cap(kSqrt2 - 1.0) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS((void)scenopt::measure_cap(-0.1), std::domain_error);
  CHECK_THROWS_AS((void)scenopt::measure_cap(3.0), std::domain_error);

  // Inverse relationship with the depth formula used by curve_h.
  for (double eps : {0.01, 0.1, 0.25, 0.4}) {
    const double s = std::sin(kPi * eps / 2.0);
    const double depth = 2.0 * kSqrt2 * s * s;  // sqrt(2)(1 - cos(pi eps))
    CHECK(scenopt::measure_cap(depth) == doctest::Approx(eps).epsilon(1e-12));
  }

  // Monte Carlo: the cap measure is exactly P{eta >= sqrt(2) - alpha}.
  scenopt::RngStream rng(2222, 0);
  const int n = 200000;
  for (double alpha : {0.05, 0.3, 1.0}) {
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      const double a = 2.0 * kPi * rng.uniform01();
      hits += (std::cos(a) + std::sin(a) >= kSqrt2 - alpha);
    }
    const double p = scenopt::measure_cap(alpha);
    CHECK(std::abs(static_cast<double>(hits) / n - p) <=
          3.0 * std::sqrt(p * (1.0 - p) / n));
  }
}

TEST_CASE("relaxed_tail endpoints and monotonicity") {
  for (int N : {1, 10, 100}) {
    CHECK(scenopt::relaxed_tail(0.0, N) == doctest::Approx(0.0).scale(1.0));
    // At alpha = sqrt(2) both caps are half-circles:
    // 1 - (2 (1/2)^N - 0^N) = 1 - 2^(1-N).
    CHECK(scenopt::relaxed_tail(kSqrt2, N) ==
          doctest::Approx(1.0 - std::pow(2.0, 1 - N)).epsilon(1e-13));
    double prev = -1.0;
    for (int j = 0; j <= 20; ++j) {
      const double alpha = kSqrt2 * (static_cast<double>(j) / 20.0);
      const double cur = scenopt::relaxed_tail(alpha, N);
      CHECK(cur >= prev - 1e-13);
      CHECK(cur >= -1e-13);
      CHECK(cur <= 1.0 + 1e-13);
      prev = cur;
    }
  }
  // Beyond alpha = sqrt(2) the cap measure exceeds 1/2 and the bound's
  // validity guard fires.
  CHECK_THROWS_AS((void)scenopt::relaxed_tail(2.0, 10), std::range_error);
}

TEST_CASE("relaxed_tail really lower-bounds the empirical coverage") {
  auto prob = scenopt::make_problem("circle");
  auto solver = scenopt::solver_for(prob);
  const int T = 10000;
  const auto tail = scenopt::estimate_tail(prob, solver, 100, T, 987654);
  for (double alpha : {0.001, 0.003, 0.01, 0.05, 0.2, 0.8}) {
    const double lower = scenopt::relaxed_tail(alpha, 100);
    const double observed = scenopt::p_hat(tail, alpha);
    CHECK(observed >=
          lower - 3.0 * std::sqrt(std::max(lower * (1.0 - lower), 0.25e-4) / T));
  }
}

TEST_CASE("margin curves: frozen values, ordering, limits") {
  // Frozen reference values computed independently at high precision.
  CHECK(scenopt::curve_h(0.2, 100, BoundFamily::inclusion_exclusion).value ==
        doctest::Approx(0.0034571982975086083).epsilon(1e-10));
  CHECK(scenopt::curve_h(0.2, 100, BoundFamily::additive).value ==
        doctest::Approx(0.003614516634727383).epsilon(1e-10));
  CHECK(scenopt::curve_h(0.2, 100, BoundFamily::classic).value ==
        doctest::Approx(0.0030645913778533759).epsilon(1e-10));
  CHECK(scenopt::curve_h(0.1, 100, BoundFamily::inclusion_exclusion).value ==
        doctest::Approx(0.0059803283865196549).epsilon(1e-10));
  CHECK(scenopt::curve_h(0.1, 100, BoundFamily::additive).value ==
        doctest::Approx(0.0060743775069350692).epsilon(1e-10));
  CHECK(scenopt::curve_h(0.1, 100, BoundFamily::classic).value ==
        doctest::Approx(0.0051229778399353642).epsilon(1e-10));

  CHECK(scenopt::curve_h(0.2, 100, BoundFamily::additive).beta == 0.2);

  // The refined family always certifies at least as tight a margin as the
  // plain union bound, and margins shrink as beta grows or N grows.
  for (int N : {20, 100, 500}) {
    double prev_ie = 1e300;
    for (double beta : {0.01, 0.05, 0.1, 0.2, 0.4, 0.8}) {
      const double h_ie = scenopt::curve_h(beta, N, BoundFamily::inclusion_exclusion).value;
      const double h_a = scenopt::curve_h(beta, N, BoundFamily::additive).value;
      CHECK(h_ie <= h_a + 1e-15);
      CHECK(h_ie < prev_ie);
      CHECK(h_ie >= 0.0);
      prev_ie = h_ie;
    }
    CHECK(scenopt::curve_h(0.1, 2 * N, BoundFamily::additive).value <
          scenopt::curve_h(0.1, N, BoundFamily::additive).value);
  }

  // N = 1, beta = 1 for the additive family: eps = 1 - beta/2 = 1/2, giving
  // the full one-cap depth sqrt(2).
  CHECK(scenopt::curve_h(1.0, 1, BoundFamily::additive).value ==
        doctest::Approx(kSqrt2).epsilon(1e-14));
  // As beta -> 1 the classic margin collapses to zero.
  CHECK(scenopt::curve_h(0.999999, 50, BoundFamily::classic).value <
        scenopt::curve_h(0.5, 50, BoundFamily::classic).value);
}

TEST_CASE("coverage of the margin curves on fresh samples") {
  auto prob = scenopt::make_problem("circle");
  auto solver = scenopt::solver_for(prob);
  const int T = 2000;
  const auto tail = scenopt::estimate_tail(prob, solver, 100, T, 13579);
  for (double beta : {0.1, 0.2}) {
    for (BoundFamily family : {BoundFamily::classic, BoundFamily::additive,
                               BoundFamily::inclusion_exclusion}) {
      const double alpha = scenopt::curve_h(beta, 100, family).value;
      const double covered = scenopt::p_hat(tail, alpha);
      const double target = 1.0 - beta;
      CHECK(covered >= target - 3.0 * std::sqrt(target * (1.0 - target) / T));
    }
  }
}

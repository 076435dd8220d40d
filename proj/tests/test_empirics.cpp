// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
//
// The Monte Carlo estimators are exercised against closed-form probabilities
// (the interval hit-all experiment is exactly the inclusion-exclusion
// geometry) and against the analytic circle solver, so every statistical
// assertion has an exact target and an explicit sigma band.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "scenopt/bounds.hpp"
#include "scenopt/circle_example.hpp"
#include "scenopt/empirics.hpp"
#include "scenopt/problem.hpp"

using scenopt::BoundFamily;
using scenopt::make_problem;
using scenopt::TailEstimate;

namespace {
const double kSqrt2 = std::sqrt(2.0);

TailEstimate toy_tail() {
  TailEstimate tail;
  tail.g_values = {1.0, 2.0, 3.0, 4.0, 5.0};
  tail.N = 3;
  tail.T = 5;
  tail.robust_value = 5.0;
  return tail;
}
}  // namespace

TEST_CASE("p_hat counts gaps with a non-strict threshold") {
  const TailEstimate tail = toy_tail();
  CHECK(scenopt::p_hat(tail, -0.5) == 0.0);
  CHECK(scenopt::p_hat(tail, 0.0) == 0.2);   // g = 5 counts: gap 0 <= 0
  CHECK(scenopt::p_hat(tail, 0.5) == 0.2);
  CHECK(scenopt::p_hat(tail, 1.0) == 0.4);   // ties count (gap exactly 1)
  CHECK(scenopt::p_hat(tail, 3.999) == 0.8);
  CHECK(scenopt::p_hat(tail, 10.0) == 1.0);
  double prev = 0.0;
  for (double a = -1.0; a <= 6.0; a += 0.25) {
    const double cur = scenopt::p_hat(tail, a);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("empirical_optimal_ulb picks the documented order statistic") {
  const TailEstimate tail = toy_tail();
  CHECK(scenopt::empirical_optimal_ulb(tail, 0.0) == 0.0);   // rank 5 -> g = 5
  CHECK(scenopt::empirical_optimal_ulb(tail, 0.2) == 1.0);   // rank 4
  CHECK(scenopt::empirical_optimal_ulb(tail, 0.3) == 1.0);   // ceil(3.5) = 4
  CHECK(scenopt::empirical_optimal_ulb(tail, 0.5) == 2.0);   // ceil(2.5) = 3
  CHECK(scenopt::empirical_optimal_ulb(tail, 1.0) == 4.0);   // clamped to rank 1
  CHECK_THROWS_AS((void)scenopt::empirical_optimal_ulb(tail, -0.1), std::domain_error);
  CHECK_THROWS_AS((void)scenopt::empirical_optimal_ulb(tail, 1.1), std::domain_error);

  // Negative margins clamp to zero when the robust value undercuts the tail.
  TailEstimate below = toy_tail();
  below.robust_value = 0.5;
  CHECK(scenopt::empirical_optimal_ulb(below, 0.0) == 0.0);

  // Defining property: strictly fewer than eps*T of the gaps fall below the
  // margin (so a (1-eps) share undershoots by it or more), and no larger
  // point on the gap grid keeps that budget.
  std::vector<double> gaps;
  for (double g : tail.g_values) gaps.push_back(tail.robust_value - g);
  const auto strictly_below = [&](double x) {
    return static_cast<double>(std::count_if(gaps.begin(), gaps.end(),
                                             [&](double v) { return v < x; })) /
           static_cast<double>(gaps.size());
  };
  for (double eps : {0.0, 0.1, 0.2, 0.4, 0.8}) {
    const double a = scenopt::empirical_optimal_ulb(tail, eps);
    CHECK(strictly_below(a) <= eps);
    for (double v : gaps) {
      if (v > a) CHECK(strictly_below(v) > eps);
    }
  }
}

TEST_CASE("hit-all experiment matches the closed forms") {
  // k = 1: the complement is exactly (1-eps)^N.
  const double p1 = scenopt::hit_all_simulation(1, 0.1, 10, 200000, 11);
  const double exact1 = 0.65132155989999996;  // 1 - 0.9^10
  CHECK(std::abs(p1 - exact1) <= 3.0 * std::sqrt(exact1 * (1 - exact1) / 200000));

  // k = 2: complement is the inclusion-exclusion bound.
  const double p2 = scenopt::hit_all_simulation(2, 0.1, 10, 200000, 12);
  const double exact2 = 0.41001730219999999;  // 1 - (2*0.9^10 - 0.8^10)
  CHECK(std::abs(p2 - exact2) <= 3.0 * std::sqrt(exact2 * (1 - exact2) / 200000));
  const scenopt::BoundSpec spec{BoundFamily::inclusion_exclusion, 2, 10};
  CHECK(exact2 == doctest::Approx(1.0 - scenopt::phi_ie(0.1, spec)).epsilon(1e-14));

  // One draw can never land in two disjoint intervals.
  CHECK(scenopt::hit_all_simulation(2, 0.5, 1, 5000, 13) == 0.0);
  // Two draws split the halves with probability exactly 1/2.
  const double p22 = scenopt::hit_all_simulation(2, 0.5, 2, 100000, 14);
  CHECK(std::abs(p22 - 0.5) <= 3.0 * std::sqrt(0.25 / 100000));

  // Deterministic in the seed.
  CHECK(scenopt::hit_all_simulation(2, 0.1, 10, 5000, 21) ==
        scenopt::hit_all_simulation(2, 0.1, 10, 5000, 21));

  CHECK_THROWS_AS((void)scenopt::hit_all_simulation(0, 0.1, 10, 10, 0), std::domain_error);
  CHECK_THROWS_AS((void)scenopt::hit_all_simulation(64, 0.01, 10, 10, 0), std::domain_error);
  CHECK_THROWS_AS((void)scenopt::hit_all_simulation(2, 0.6, 10, 10, 0), std::domain_error);
  CHECK_THROWS_AS((void)scenopt::hit_all_simulation(2, 0.0, 10, 10, 0), std::domain_error);
  CHECK_THROWS_AS((void)scenopt::hit_all_simulation(2, 0.1, 0, 10, 0), std::domain_error);
  CHECK_THROWS_AS((void)scenopt::hit_all_simulation(2, 0.1, 10, 0, 0), std::domain_error);
}

TEST_CASE("solver_for dispatches to the closed form on the circle family") {
  auto circle = make_problem("circle");
  auto solver = scenopt::solver_for(circle);
  auto set = scenopt::sample_scenarios(circle.program, 25, 31, 0);
  CHECK(solver(circle.program, set).objective ==
        scenopt::solve_circle_analytic(set).objective);

  auto affine = make_problem("affine:1");
  auto general = scenopt::solver_for(affine);
  auto aset = scenopt::sample_scenarios(affine.program, 10, 31, 0);
  auto sol = general(affine.program, aset);
  CHECK(sol.status == scenopt::SolveStatus::optimal);
  CHECK(sol.support_indices.empty());  // studies run with identification off
}

TEST_CASE("robust_value prefers the closed form and falls back to the solver") {
  auto circle = make_problem("circle");
  CHECK(scenopt::robust_value(circle) == doctest::Approx(kSqrt2));

  auto affine = make_problem("affine:1");
  CHECK_FALSE(affine.metadata.robust_optimum.has_value());
  const double via_solver =
      scenopt::solve_robust(affine.program, affine.metadata).objective;
  CHECK(scenopt::robust_value(affine) == doctest::Approx(via_solver).epsilon(1e-12));

  auto blind = make_problem("circle");
  blind.metadata.robust_optimum.reset();
  blind.metadata.robust_sup = nullptr;
  CHECK_THROWS_AS((void)scenopt::robust_value(blind), std::domain_error);
}

TEST_CASE("sample_g_values is reproducible and surfaces failed solves") {
  auto circle = make_problem("circle");
  auto solver = scenopt::solver_for(circle);
  auto g1 = scenopt::sample_g_values(circle, solver, 20, 50, 8);
  auto g2 = scenopt::sample_g_values(circle, solver, 20, 50, 8);
  auto g3 = scenopt::sample_g_values(circle, solver, 20, 50, 9);
  CHECK(g1 == g2);
  CHECK(g1 != g3);
  CHECK(g1.size() == 50);
  for (double g : g1) {
    CHECK(g >= 0.0);  // 20 scenarios always pin a nonnegative optimum
    CHECK(g <= kSqrt2 + 1e-12);
  }

  scenopt::ScenarioSolver broken = [](const scenopt::UncertainProgram&,
                                      const scenopt::ScenarioSet&) {
    scenopt::ScenarioSolution sol;
    sol.status = scenopt::SolveStatus::max_iter;
    return sol;
  };
  CHECK_THROWS_WITH_AS((void)scenopt::sample_g_values(circle, broken, 5, 3, 0),
                       doctest::Contains("trial 0"), std::runtime_error);
  CHECK_THROWS_AS((void)scenopt::sample_g_values(circle, solver, 5, 0, 0),
                  std::domain_error);
}

TEST_CASE("estimated tail of the circle behaves like the theory says") {
  auto circle = make_problem("circle");
  auto solver = scenopt::solver_for(circle);
  const auto tail = scenopt::estimate_tail(circle, solver, 100, 5000, 424242);
  CHECK(tail.N == 100);
  CHECK(tail.T == 5000);
  CHECK(tail.robust_value == doctest::Approx(kSqrt2));
  CHECK(std::is_sorted(tail.g_values.begin(), tail.g_values.end()));
  CHECK(tail.g_values.back() <= kSqrt2 + 1e-12);

  // Every exact-curve margin must cover its nominal share, up to three
  // binomial sigmas at T = 5000.
  for (BoundFamily family : {BoundFamily::classic, BoundFamily::additive,
                             BoundFamily::inclusion_exclusion}) {
    const double beta = 0.2;
    const double alpha = scenopt::curve_h(beta, 100, family).value;
    const double covered = scenopt::p_hat(tail, alpha);
    CHECK(covered >= (1.0 - beta) - 3.0 * std::sqrt(beta * (1.0 - beta) / 5000.0));
  }

  // The empirically optimal margin at eps = 0.2 keeps the strictly-undershot
  // share within budget on the sample it was computed from, lands exactly one
  // grid step past it (maximality), and p_hat accounts for its own tie.
  const double ulb = scenopt::empirical_optimal_ulb(tail, 0.2);
  CHECK(ulb >= 0.0);
  int below = 0, at = 0;
  for (double g : tail.g_values) {
    const double gap = tail.robust_value - g;
    below += gap < ulb;
    at += gap == ulb;
  }
  CHECK(below <= 0.2 * 5000);
  CHECK(below + at > 0.2 * 5000);
  CHECK(scenopt::p_hat(tail, ulb) == doctest::Approx((below + at) / 5000.0));
}

TEST_CASE("estimate_gstar approaches the k-scenario supremum on the circle") {
  auto circle = make_problem("circle");
  auto solver = scenopt::solver_for(circle);

  // Brute-force oracle for k = 1: scan single-scenario programs over a fine
  // angular grid; the best is sqrt(2) - 1, reached at the worst-case angle.
  double scan = -1e300;
  for (int j = 0; j < 10000; ++j) {
    scenopt::ScenarioSet one;
    Eigen::VectorXd v(2);
    const double a = 2.0 * std::numbers::pi * j / 10000;
    v << std::cos(a), std::sin(a);
    one.samples.push_back(v);
    scan = std::max(scan, scenopt::solve_circle_analytic(one).objective);
  }
  CHECK(scan <= kSqrt2 - 1.0 + 1e-12);
  CHECK(scan >= kSqrt2 - 1.0 - 1e-5);

  const double g1 = scenopt::estimate_gstar(circle, solver, 1, 20000, 5150);
  CHECK(g1 <= kSqrt2 - 1.0 + 1e-12);
  CHECK(g1 >= kSqrt2 - 1.0 - 1e-3);

  const double g2 = scenopt::estimate_gstar(circle, solver, 2, 50000, 5151);
  CHECK(g2 <= kSqrt2 + 1e-12);
  CHECK(g2 >= kSqrt2 - 0.01);

  // Degenerate single trial is still well-defined and deterministic.
  CHECK(scenopt::estimate_gstar(circle, solver, 1, 1, 7) ==
        scenopt::estimate_gstar(circle, solver, 1, 1, 7));
  CHECK_THROWS_AS((void)scenopt::estimate_gstar(circle, solver, 0, 10, 0),
                  std::domain_error);
  CHECK_THROWS_AS((void)scenopt::estimate_gstar(circle, solver, 1, 0, 0),
                  std::domain_error);
}

TEST_CASE("complexity probe finds the two-scenario threshold of the circle") {
  auto circle = make_problem("circle");
  auto solver = scenopt::solver_for(circle);
  const auto k = scenopt::complexity_probe(circle, solver, 4, 100000, 1e-3, 99);
  REQUIRE(k.has_value());
  CHECK(*k == 2);

  // A tolerance wider than the whole objective range is satisfied by k = 1.
  const auto loose = scenopt::complexity_probe(circle, solver, 4, 100, 3.0, 99);
  REQUIRE(loose.has_value());
  CHECK(*loose == 1);

  // Capping k below the threshold yields no answer.
  CHECK_FALSE(scenopt::complexity_probe(circle, solver, 1, 2000, 1e-3, 99).has_value());
  CHECK_THROWS_AS((void)scenopt::complexity_probe(circle, solver, 0, 10, 0.1, 0),
                  std::domain_error);
}

TEST_CASE("certificate validation measures coverage against the gap") {
  auto circle = make_problem("circle");
  auto solver = scenopt::solver_for(circle);

  scenopt::UlbCertificate generous;
  generous.beta = 0.1;
  generous.alpha = 3.0;  // covers every possible gap
  generous.N = 10;
  auto report = scenopt::validate_certificate(circle, solver, generous, 400, 3);
  CHECK(report.target == doctest::Approx(0.9));
  CHECK(report.achieved == 1.0);
  CHECK(report.trials == 400);
  CHECK(report.stderr_est == doctest::Approx(0.5 / std::sqrt(400.0)));
  CHECK(report.pass);

  scenopt::UlbCertificate useless;
  useless.beta = 0.5;
  useless.alpha = 0.0;  // gap would have to vanish exactly
  useless.N = 10;
  auto bad = scenopt::validate_certificate(circle, solver, useless, 400, 3);
  CHECK(bad.achieved == 0.0);
  CHECK_FALSE(bad.pass);

  // End-to-end: a certificate produced by certify() validates comfortably.
  auto relaxed = make_problem("circle-relaxed");
  const auto cert = scenopt::certify(relaxed.program, relaxed.metadata, 100, 0.2,
                                     BoundFamily::additive);
  auto end_to_end =
      scenopt::validate_certificate(relaxed, scenopt::solver_for(relaxed), cert, 500, 4);
  CHECK(end_to_end.target == doctest::Approx(0.8));
  CHECK(end_to_end.pass);
  CHECK(end_to_end.achieved >= 0.8);

  scenopt::UlbCertificate invalid = generous;
  invalid.alpha = -1.0;
  CHECK_THROWS_AS((void)scenopt::validate_certificate(circle, solver, invalid, 10, 0),
                  std::domain_error);
  invalid.alpha = 1.0;
  invalid.beta = 0.0;
  CHECK_THROWS_AS((void)scenopt::validate_certificate(circle, solver, invalid, 10, 0),
                  std::domain_error);
}

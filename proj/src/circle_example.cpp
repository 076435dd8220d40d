// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#include "scenopt/circle_example.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace scenopt {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

}  // namespace

ScenarioSolution solve_circle_analytic(const ScenarioSet& scenarios) {
  ScenarioSolution sol;
  sol.status = SolveStatus::optimal;
  sol.x_star = Eigen::VectorXd(2);
  if (scenarios.samples.empty()) {
    sol.x_star << 0.0, -kSqrt2;  // unconstrained box minimum
    sol.objective = sol.x_star(1);
    return sol;
  }

  double eta_max = -std::numeric_limits<double>::infinity();
  double eta_min = std::numeric_limits<double>::infinity();
  int arg_max = -1;
  int arg_min = -1;
  for (size_t i = 0; i < scenarios.samples.size(); ++i) {
    const double eta = scenarios.samples[i](0) + scenarios.samples[i](1);
    if (eta > eta_max) {
      eta_max = eta;
      arg_max = static_cast<int>(i);
    }
    if (eta < eta_min) {
      eta_min = eta;
      arg_min = static_cast<int>(i);
    }
  }
  const double x1 = std::clamp(-(eta_max + eta_min) / 2.0, -1.0, 1.0);
  sol.x_star << x1, std::max(std::abs(x1 + eta_max), std::abs(x1 + eta_min));
  sol.objective = sol.x_star(1);
  sol.support_indices.push_back(std::min(arg_max, arg_min));
  if (arg_max != arg_min) sol.support_indices.push_back(std::max(arg_max, arg_min));
  return sol;
}

double measure_cap(double alpha) {
  if (!(alpha >= -1e-12 && alpha <= 2.0 * kSqrt2 + 1e-12)) {
    throw std::domain_error("measure_cap wants alpha in [0, 2 sqrt 2]");
  }
  return std::acos(std::clamp((kSqrt2 - alpha) / kSqrt2, -1.0, 1.0)) / kPi;
}

double relaxed_tail(double alpha, int N) {
  const double eps = measure_cap(alpha);
  return 1.0 - phi_ie(eps, BoundSpec{BoundFamily::inclusion_exclusion, 2, N});
}

CurvePoint curve_h(double beta, int N, BoundFamily family) {
  const double eps = invert_bound(beta, BoundSpec{family, 2, N});
  // sqrt(2) (1 - cos(pi eps)) in the cancellation-free form 2 sqrt(2) sin^2;
  // halved for the classic family (one-sided worst case).
  const double s = std::sin(kPi * eps / 2.0);
  double value = 2.0 * kSqrt2 * s * s;
  if (family == BoundFamily::classic) value /= 2.0;
  return CurvePoint{beta, value};
}

}  // namespace scenopt

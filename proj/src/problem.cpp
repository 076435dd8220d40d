// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#include "scenopt/problem.hpp"

#include <cmath>
#include <numbers>

namespace scenopt {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);

// Uniform point on the unit sphere S^(m-1), m in {2, 3}.
VectorXd sample_sphere(int m, RngStream& rng) {
  VectorXd v(m);
  if (m == 2) {
    double a = 2.0 * kPi * rng.uniform01();
    v << std::cos(a), std::sin(a);
    return v;
  }
  for (;;) {
    for (int i = 0; i < m; ++i) v(i) = rng.normal();
    double n = v.norm();
    if (n > 1e-6) return v / n;
  }
}

// Moves delta along the sphere by a chord distance of at most max_dist: pick
// a random tangent direction and rotate by an angle whose chord is within
// budget.  Works in any ambient dimension >= 2.
VectorXd perturb_sphere(const VectorXd& delta, double max_dist, RngStream& rng) {
  double half = std::min(max_dist, 2.0) / 2.0;
  double psi = 2.0 * std::asin(half) * rng.uniform01();
  VectorXd t(delta.size());
  for (;;) {
    for (int i = 0; i < delta.size(); ++i) t(i) = rng.normal();
    t -= t.dot(delta) * delta;
    double n = t.norm();
    if (n > 1e-9) {
      t /= n;
      break;
    }
  }
  return std::cos(psi) * delta + std::sin(psi) * t;
}

// Ball-measure lower bound for the uniform distribution on S^(m-1), as a
// function of chord radius.  m = 2: arc fraction (2/pi) asin(r/2).  m = 3:
// cap fraction r^2/4.  Both are exact (the bound holds with equality).
RegularityPhi sphere_regularity(int m) {
  RegularityPhi reg;
  if (m == 2) {
    reg.value = [](double r) { return (2.0 / kPi) * std::asin(std::min(r, 2.0) / 2.0); };
    reg.inverse = [](double p) { return 2.0 * std::sin(kPi * p / 2.0); };
  } else {
    reg.value = [](double r) { return std::min(r, 2.0) * std::min(r, 2.0) / 4.0; };
    reg.inverse = [](double p) { return 2.0 * std::sqrt(p); };
  }
  return reg;
}

Problem make_circle(bool relaxed) {
  Problem prob;
  UncertainProgram& pr = prob.program;
  pr.name = relaxed ? "circle-relaxed" : "circle";
  pr.d = 2;
  pr.m = 2;
  pr.c = VectorXd::Zero(2);
  pr.c(1) = 1.0;
  pr.lower = VectorXd(2);
  pr.upper = VectorXd(2);
  if (relaxed) {
    pr.lower << -1.0, -2.0;
    pr.upper << 1.0, 2.0;
  } else {
    pr.lower << -1.0, -kSqrt2;
    pr.upper << 1.0, kSqrt2;
  }
  // f(x, delta) = |x1 + delta1 + delta2| - x2, delta uniform on the unit
  // circle.  Robustly, x2 must dominate |x1| + sqrt(2).
  pr.constraint = [](const VectorXd& x, const VectorXd& delta) {
    return std::abs(x(0) + delta(0) + delta(1)) - x(1);
  };
  pr.sample = [](RngStream& rng) { return sample_sphere(2, rng); };
  pr.metric = [](const VectorXd& a, const VectorXd& b) { return (a - b).norm(); };
  pr.perturb = perturb_sphere;

  ProblemMetadata& md = prob.metadata;
  md.lipschitz_L_delta = kSqrt2;  // gradient of delta1 + delta2 has norm sqrt(2)
  md.regularity = sphere_regularity(2);
  md.robust_sup = [](const VectorXd& x) { return std::abs(x(0)) + kSqrt2 - x(1); };
  md.robust_optimum = kSqrt2;
  if (relaxed) {
    VectorXd x0(2);
    x0 << 0.0, 2.0;
    md.slater_point = x0;
    md.slater_margin = kSqrt2 - 2.0;
  }
  // The tight box leaves no strictly feasible point: even at the most relaxed
  // corner, sup_delta f((0, sqrt 2), delta) = 0.  slater_* stay unset.
  return prob;
}

Problem make_affine(std::uint64_t seed) {
  RngStream rng(seed, 0xa551u);
  const int d = 2 + static_cast<int>(rng.next_u64() % 3);  // 2..4
  const int m = 2 + static_cast<int>(rng.next_u64() % 2);  // 2..3

  MatrixXd A(d, m);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = rng.normal();
  VectorXd b1(m);
  for (int j = 0; j < m; ++j) b1(j) = rng.normal();
  VectorXd a0(d);
  for (int i = 0; i < d; ++i) a0(i) = rng.normal();
  VectorXd c(d);
  for (;;) {
    for (int i = 0; i < d; ++i) c(i) = rng.normal();
    if (c.norm() > 1e-3) break;
  }
  c /= c.norm();
  VectorXd lower(d), upper(d);
  for (int i = 0; i < d; ++i) lower(i) = -1.0 - rng.uniform01();
  for (int i = 0; i < d; ++i) upper(i) = 1.0 + rng.uniform01();

  // Strict feasibility is installed by construction: pick the box center and
  // shift the constraint offset so the robust worst case sits at -1/2 there.
  VectorXd x0 = 0.5 * (lower + upper);
  const double b0 = (A.transpose() * x0 - b1).norm() + a0.dot(x0) + 0.5;

  Problem prob;
  UncertainProgram& pr = prob.program;
  pr.name = "affine:" + std::to_string(seed);
  pr.d = d;
  pr.m = m;
  pr.c = c;
  pr.lower = lower;
  pr.upper = upper;
  // f(x, delta) = (A'x - b1)'delta + a0'x - b0, delta on the unit sphere.
  pr.constraint = [A, b1, a0, b0](const VectorXd& x, const VectorXd& delta) {
    return (A.transpose() * x - b1).dot(delta) + a0.dot(x) - b0;
  };
  pr.sample = [m](RngStream& r) { return sample_sphere(m, r); };
  pr.metric = [](const VectorXd& a, const VectorXd& b) { return (a - b).norm(); };
  pr.perturb = perturb_sphere;

  ProblemMetadata& md = prob.metadata;
  md.slater_point = x0;
  md.slater_margin = -0.5;
  // |f(x,d1) - f(x,d2)| <= |A'x - b1| |d1 - d2|; the norm is convex in x, so
  // its maximum over the box sits at a vertex.
  double L = 0.0;
  for (unsigned mask = 0; mask < (1u << d); ++mask) {
    VectorXd v(d);
    for (int i = 0; i < d; ++i) v(i) = (mask >> i & 1u) ? upper(i) : lower(i);
    L = std::max(L, (A.transpose() * v - b1).norm());
  }
  md.lipschitz_L_delta = L;
  md.regularity = sphere_regularity(m);
  // sup over the sphere of an affine function of delta is the norm of its
  // linear part plus the offset.
  md.robust_sup = [A, b1, a0, b0](const VectorXd& x) {
    return (A.transpose() * x - b1).norm() + a0.dot(x) - b0;
  };
  return prob;
}

}  // namespace

Problem make_problem(const std::string& name) {
  if (name == "circle") return make_circle(false);
  if (name == "circle-relaxed") return make_circle(true);
  if (name.rfind("affine:", 0) == 0) {
    const std::string tail = name.substr(7);
    if (tail.empty() || tail.find_first_not_of("0123456789") != std::string::npos) {
      throw std::domain_error("affine instance wants a numeric seed, got: " + name);
    }
    return make_affine(std::stoull(tail));
  }
  throw std::domain_error("unknown problem: " + name);
}

ScenarioSet sample_scenarios(const UncertainProgram& program, int count,
                             std::uint64_t master_seed, std::uint64_t stream_id) {
  if (count < 0) throw std::domain_error("scenario count must be nonnegative");
  ScenarioSet set;
  set.master_seed = master_seed;
  set.stream_id = stream_id;
  set.samples.reserve(count);
  RngStream rng(master_seed, stream_id);
  for (int i = 0; i < count; ++i) set.samples.push_back(program.sample(rng));
  return set;
}

}  // namespace scenopt

// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#include "scenopt/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "scenopt/rng.hpp"
#include "scenopt/solver.hpp"
#include "scenopt/text_format.hpp"

namespace scenopt {

std::string method_name(UlbMethod method) {
  switch (method) {
    case UlbMethod::sensitivity_additive: return "sensitivity_additive";
    case UlbMethod::sensitivity_ie: return "sensitivity_ie";
    case UlbMethod::empirical: return "empirical";
    case UlbMethod::exact_example: return "exact_example";
  }
  throw std::domain_error("unknown method enumerator");
}

double compute_lsp(const UncertainProgram& program, const ProblemMetadata& metadata) {
  if (!metadata.slater_point || !metadata.slater_margin) {
    throw assumption_error(5, "no strictly feasible point for " + program.name);
  }
  const double margin = *metadata.slater_margin;
  if (!(margin < 0.0)) {
    throw assumption_error(5, "feasibility margin must be strictly negative");
  }
  double box_min = 0.0;  // coordinatewise minimum of c'x over the box
  for (int i = 0; i < program.d; ++i) {
    box_min += std::min(program.c(i) * program.lower(i), program.c(i) * program.upper(i));
  }
  return (box_min - program.c.dot(*metadata.slater_point)) / margin;
}

double ulb_explicit(double L_g, const std::function<double(double)>& phi_inverse,
                    double epsilon, int d, int N) {
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw std::domain_error("ulb_explicit requires epsilon in [0,1)");
  }
  if (d < 1 || N < 1) throw std::domain_error("ulb_explicit requires d >= 1 and N >= 1");
  const double p = 1.0 - std::pow((1.0 - epsilon) / d, 1.0 / N);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::range_error("confidence level left the domain of the regularity inverse");
  }
  return L_g * phi_inverse(p);
}

UlbCertificate certify(const UncertainProgram& program, const ProblemMetadata& metadata,
                       int N, double beta, BoundFamily family) {
  if (family != BoundFamily::additive && family != BoundFamily::inclusion_exclusion) {
    throw std::domain_error("certify supports the additive and inclusion-exclusion families");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::domain_error("certify requires beta in (0,1)");
  }
  if (N < program.d) {
    throw std::domain_error("certify requires at least d scenarios");
  }
  if (!metadata.regularity) {
    throw assumption_error(4, "no regularity profile for " + program.name);
  }
  if (!metadata.lipschitz_L_delta) {
    throw assumption_error(6, "no uncertainty Lipschitz constant for " + program.name);
  }

  UlbCertificate cert;
  cert.method = family == BoundFamily::additive ? UlbMethod::sensitivity_additive
                                                : UlbMethod::sensitivity_ie;
  cert.beta = beta;
  cert.N = N;
  cert.d = program.d;
  LipschitzData constants;
  constants.L_sp = compute_lsp(program, metadata);  // assumption_error(5) if absent
  constants.L_delta = *metadata.lipschitz_L_delta;
  constants.L_g = constants.L_sp * constants.L_delta;
  cert.constants = constants;
  cert.epsilon = invert_bound(beta, BoundSpec{family, program.d, N});
  cert.alpha = constants.L_g * metadata.regularity->inverse(cert.epsilon);
  cert.small_sample_warning = N < 10 * program.d;
  return cert;
}

double verify_g_lipschitz(const UncertainProgram& program, const ProblemMetadata& metadata,
                          int trials, int N, std::uint64_t master_seed, double max_dist) {
  if (trials < 1 || N < 1) throw std::domain_error("verify_g_lipschitz: bad trials or N");
  if (!(max_dist > 0.0)) throw std::domain_error("verify_g_lipschitz: max_dist must be > 0");
  compute_lsp(program, metadata);  // fail early with the assumption number

  std::vector<double> quotients(trials, 0.0);
  std::vector<char> failed(trials, 0);
  parallel_for(trials, [&](int t) {
    ScenarioSet base = sample_scenarios(program, N, master_seed, 2 * static_cast<std::uint64_t>(t));
    RngStream pert(master_seed, 2 * static_cast<std::uint64_t>(t) + 1);
    ScenarioSet moved = base;
    double worst_dist = 0.0;
    for (auto& delta : moved.samples) {
      Eigen::VectorXd shifted = program.perturb(delta, max_dist, pert);
      worst_dist = std::max(worst_dist, program.metric(delta, shifted));
      delta = shifted;
    }
    if (worst_dist < 1e-12) return;  // degenerate pair, quotient undefined
    SolverOptions opts;
    opts.identify_support = false;
    ScenarioSolution a = solve_scp(program, base, opts);
    ScenarioSolution b = solve_scp(program, moved, opts);
    if (a.status != SolveStatus::optimal || b.status != SolveStatus::optimal) {
      failed[t] = 1;
      return;
    }
    quotients[t] = std::abs(a.objective - b.objective) / worst_dist;
  });
  for (int t = 0; t < trials; ++t) {
    if (failed[t]) {
      throw std::runtime_error("verify_g_lipschitz: solve failed in pair " + std::to_string(t));
    }
  }
  return *std::max_element(quotients.begin(), quotients.end());
}

double invert_regularity_numeric(const RegularityPhi& regularity, double probability,
                                 double r_max) {
  if (!(probability >= 0.0 && probability <= regularity.value(r_max))) {
    throw std::domain_error("invert_regularity_numeric: probability outside [0, phi(r_max)]");
  }
  double lo = 0.0;
  double hi = r_max;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    const double mid = 0.5 * (lo + hi);
    (regularity.value(mid) < probability ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::string to_key_value(const UlbCertificate& c) {
  std::string out;
  out += "method=" + method_name(c.method) + "\n";
  out += "beta=" + g17(c.beta) + "\n";
  out += "epsilon=" + g17(c.epsilon) + "\n";
  out += "alpha=" + g17(c.alpha) + "\n";
  out += "L_delta=" + (c.constants ? g17(c.constants->L_delta) : std::string("none")) + "\n";
  out += "L_sp=" + (c.constants ? g17(c.constants->L_sp) : std::string("none")) + "\n";
  out += "N=" + std::to_string(c.N) + "\n";
  out += "d=" + std::to_string(c.d) + "\n";
  return out;
}

}  // namespace scenopt

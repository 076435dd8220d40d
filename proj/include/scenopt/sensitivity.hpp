// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
//
// Certification of sample-based optima.  Given an instance whose metadata
// carries a regularity profile for the uncertainty measure, a strictly
// feasible point, and a Lipschitz constant in the uncertainty, this module
// turns a confidence level beta into an explicit margin alpha such that with
// probability at least 1 - beta over the N sampled scenarios the robust
// optimum exceeds the sampled optimum by at most alpha.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "scenopt/bounds.hpp"
#include "scenopt/problem.hpp"

namespace scenopt {

struct LipschitzData {
  double L_delta = 0.0;  // constraint sensitivity to the uncertainty
  double L_sp = 0.0;     // optimal-value sensitivity to constraint relaxation
  double L_g = 0.0;      // product: sampled-optimum sensitivity to scenarios
};

enum class UlbMethod { sensitivity_additive, sensitivity_ie, empirical, exact_example };

std::string method_name(UlbMethod method);

// An upper-level bound certificate: the claim P{ J* - g_N <= alpha } >= 1-beta.
struct UlbCertificate {
  UlbMethod method = UlbMethod::sensitivity_additive;
  double beta = 0.0;
  double epsilon = 0.0;  // violation level with phi_family(eps; d, N) = beta
  double alpha = 0.0;
  std::optional<LipschitzData> constants;  // absent for empirical/exact methods
  int N = 0;
  int d = 0;
  bool small_sample_warning = false;  // N < 10 d: valid but statistically thin
};

// Sensitivity of the optimal value to constraint relaxation, from a strictly
// feasible point x0:
//
//   L_sp = (min over the box of c'x  -  c'x0) / sup_delta f(x0, delta).
//
// Both factors are nonpositive (the denominator strictly), so L_sp >= 0.
// Throws assumption_error(5) when the metadata carries no strictly feasible
// point or the margin is not negative.
double compute_lsp(const UncertainProgram& program, const ProblemMetadata& metadata);

// Margin as an explicit function of the violation level:
//
//   alpha(eps) = L_g * phi_inverse(1 - ((1-eps)/d)^(1/N)),
//
// the closed-form companion of the additive-family certificate (the inner
// expression is the confidence level the additive bound attaches to eps,
// i.e. beta = d (1-eps)^N).  Throws std::range_error when the inner value
// leaves [0,1], std::domain_error for bad eps/N.
double ulb_explicit(double L_g, const std::function<double(double)>& phi_inverse,
                    double epsilon, int d, int N);

// Builds the certificate: eps = invert_bound(beta; family, k=d, N) and
// alpha = L_sp * L_delta * regularity.inverse(eps).  family must be additive
// or inclusion_exclusion; for the latter, beta below the bound's value at
// eps = 1/d is out of range (propagated from invert_bound).  Missing
// metadata raises assumption_error with the violated assumption number
// (4 regularity, 5 strict feasibility, 6 Lipschitz constant).
UlbCertificate certify(const UncertainProgram& program, const ProblemMetadata& metadata,
                       int N, double beta, BoundFamily family);

// Monte Carlo stress test of the sampled-optimum Lipschitz property: draws
// `trials` pairs (omega, omega') where omega' moves every scenario along the
// support by a metric distance <= max_dist, solves both sampled programs,
// and returns the largest |g - g'| / max_i dist_i observed.  The theory
// bounds this by L_sp * L_delta.  Pairs whose largest displacement is below
// 1e-12 are skipped.  Trial t draws scenarios from stream 2t and the
// perturbation from stream 2t + 1 of master_seed.
double verify_g_lipschitz(const UncertainProgram& program, const ProblemMetadata& metadata,
                          int trials, int N, std::uint64_t master_seed,
                          double max_dist = 0.1);

// Bisection inverse of a regularity profile on [0, r_max]; cross-check
// utility for the analytic inverses stored with the problems (never used
// inside a certificate, where inversion error would corrupt the guarantee).
double invert_regularity_numeric(const RegularityPhi& regularity, double probability,
                                 double r_max);

// Flat "key=value" serialization, one field per line, fixed order (method,
// beta, epsilon, alpha, L_delta, L_sp, N, d), 17 significant digits so every
// double round-trips exactly.  Certificates without constants serialize the
// two L fields as "none".
std::string to_key_value(const UlbCertificate& certificate);

}  // namespace scenopt

// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
//
// Probability bounds for the scenario approach to robust convex programs.
//
// Setting: a convex program is solved on N i.i.d. sampled constraints and the
// quantity of interest is the probability measure of the set of constraints
// that would improve the objective if added (equivalently, the probability
// that the sample-based optimum is "epsilon-far" from robust).  Each family
// below maps a violation level epsilon to an upper bound on the probability
// that a sample of size N fails a coverage event indexed by k (the number of
// support constraints, bounded by the decision dimension).
//
// All three evaluators are deterministic, allocation-free and accurate to a
// few ulps over the whole (k, N, epsilon) range used in practice; see the
// notes on each for how that is achieved.

#pragma once

#include <string>

namespace scenopt {

enum class BoundFamily {
  classic,              // binomial tail
  additive,             // union bound, k * (1-eps)^N
  inclusion_exclusion,  // signed refinement of the union bound
};

// Parses "classic", "additive" or "ie"/"inclusion_exclusion"; throws
// std::domain_error otherwise.
BoundFamily parse_family(const std::string& name);
std::string family_name(BoundFamily family);

// Parameters shared by every bound family.  k >= 1 is the complexity level
// (at most the number of decision variables), N >= 1 the sample size.
struct BoundSpec {
  BoundFamily family = BoundFamily::classic;
  int k = 1;
  int N = 1;
};

// Throws std::domain_error when k < 1, N < 1, or (classic only) N < k.  The
// classic tail is a valid probability for any N >= k, although its exactness
// guarantee is an asymptotic statement that needs N strictly larger than the
// decision dimension.
void validate(const BoundSpec& spec);

// Classic binomial tail
//
//   phi_c(eps; k, N) = sum_{i=0}^{k-1} C(N,i) eps^i (1-eps)^(N-i),
//
// i.e. the probability that a Binomial(N, eps) count stays below k.  Terms
// are evaluated in log space through lgamma and accumulated with compensated
// (Neumaier) summation, then clamped to [0,1]; this keeps full precision even
// for N in the thousands where direct binomial coefficients overflow.
double phi_c(double epsilon, const BoundSpec& spec);

// Additive (union) bound
//
//   phi_a(eps; k, N) = k (1-eps)^N.
//
// Deliberately NOT clamped at 1: callers compare and invert the raw value,
// and the bound is simply vacuous where it exceeds 1.
double phi_a(double epsilon, const BoundSpec& spec);

// Inclusion-exclusion bound
//
//   phi_ie(eps; k, N) =
//     sum_{i=1}^{k} (-1)^(i-1) sum_{j=0}^{k-i} C(i-1+j, j) (1-i eps)^N,
//
// valid only for eps <= 1/k; larger eps throws std::range_error.  The inner
// coefficient sum is a small integer computed exactly; outer terms alternate
// in sign and are combined with compensated summation.  Not clamped.
double phi_ie(double epsilon, const BoundSpec& spec);

// Dispatch on spec.family.
double evaluate_bound(double epsilon, const BoundSpec& spec);

// Solves phi_family(eps; k, N) = beta for eps.
//
// Every family is continuous and strictly decreasing in eps on its validity
// interval ((0,1) for classic/additive, (0,1/k] for inclusion-exclusion), so
// the equation has at most one root.  The additive family inverts in closed
// form, eps = 1 - (beta/k)^(1/N); the others use bisection to an absolute
// tolerance of 1e-12 on eps.  Throws std::range_error when beta is not
// attained on the validity interval (for inclusion-exclusion that means
// beta < phi_ie(1/k)), and std::domain_error for beta outside (0, phi(0+)).
double invert_bound(double beta, const BoundSpec& spec);

}  // namespace scenopt

// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form companion of the planar "circle" instance (see make_problem):
//
//   min x2  over a box  s.t.  |x1 + delta1 + delta2| <= x2,
//   delta uniform on the unit circle, robust value sqrt(2).
//
// Everything of interest is analytic here, which is what makes the instance
// useful: the sampled optimum has a closed form, the coverage probability of
// a margin reduces to cap measures on the circle, and the certified margins
// are one-line formulas.  The general machinery is validated against these.

#pragma once

#include "scenopt/bounds.hpp"
#include "scenopt/problem.hpp"
#include "scenopt/solver.hpp"

namespace scenopt {

// Exact solution of the sampled program.  With eta_i = delta_i1 + delta_i2
// and eta_max/eta_min its extremes,
//
//   x1 = clamp(-(eta_max + eta_min) / 2, [-1, 1]),
//   x2 = max(|x1 + eta_max|, |x1 + eta_min|),
//
// feasible and optimal for both box variants.  support_indices are the
// argmax/argmin scenarios (deduplicated, ascending); with no scenarios the
// box minimum (0, -sqrt 2) is returned with empty support.
ScenarioSolution solve_circle_analytic(const ScenarioSet& scenarios);

// Measure of the cap of scenarios able to keep the sampled optimum within
// alpha of the robust value from one side:  (1/pi) acos((sqrt2 - alpha)/sqrt2)
// for alpha in [0, 2 sqrt 2] (the acos argument is clamped to [-1,1] to
// absorb endpoint rounding).
double measure_cap(double alpha);

// Exact relaxation of the coverage probability P{ sqrt(2) - g_N <= alpha }:
//
//   1 - phi_ie(measure_cap(alpha); 2, N),
//
// the probability that both symmetric caps of measure measure_cap(alpha) are
// hit, which implies the coverage event (so this never exceeds the true
// probability).  Valid while measure_cap(alpha) <= 1/2, i.e. alpha <=
// sqrt(2); beyond that the underlying bound's range error propagates.
double relaxed_tail(double alpha, int N);

struct CurvePoint {
  double beta = 0.0;   // confidence level
  double value = 0.0;  // objective slack, >= 0
};

// Certified margin at confidence beta for N scenarios, per bound family:
// with eps the family's inverse at beta for k = 2,
//
//   additive / inclusion_exclusion:  sqrt(2) (1 - cos(pi eps)),
//   classic:                         sqrt(2) (1 - cos(pi eps)) / 2.
//
// These are the instance's exact geometric counterparts of certify() — no
// Lipschitz relaxation.  The classic-family margin carries the extra 1/2
// because its guarantee caps the total violated measure, whose worst case
// piles up on one side, while the other two cap each support scenario's
// measure separately (symmetric worst case).  Values are deliberately not
// clamped at sqrt(2), the largest slack that can actually occur.  Inversion
// range errors propagate from invert_bound.
CurvePoint curve_h(double beta, int N, BoundFamily family);

}  // namespace scenopt

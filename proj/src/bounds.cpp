// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#include "scenopt/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scenopt {

namespace {

// Neumaier-compensated accumulator: like Kahan summation but also correct
// when the incoming term is larger than the running sum, which happens here
// because inclusion-exclusion terms alternate in sign and vary in magnitude.
class CompensatedSum {
 public:
  void add(long double v) {
    long double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return static_cast<double>(sum_ + comp_); }

 private:
  long double sum_ = 0.0L;
  long double comp_ = 0.0L;
};

double log_choose(int n, int i) {
  return std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
}

void validate_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::domain_error("epsilon must lie in [0,1]");
  }
}

void require_family(const BoundSpec& spec, BoundFamily family) {
  if (spec.family != family) {
    throw std::domain_error("bound spec family does not match the evaluator");
  }
}

}  // namespace

BoundFamily parse_family(const std::string& name) {
  if (name == "classic") return BoundFamily::classic;
  if (name == "additive") return BoundFamily::additive;
  if (name == "ie" || name == "inclusion_exclusion") {
    return BoundFamily::inclusion_exclusion;
  }
  throw std::domain_error("unknown bound family: " + name);
}

std::string family_name(BoundFamily family) {
  switch (family) {
    case BoundFamily::classic: return "classic";
    case BoundFamily::additive: return "additive";
    case BoundFamily::inclusion_exclusion: return "ie";
  }
  throw std::domain_error("unknown bound family enumerator");
}

void validate(const BoundSpec& spec) {
  if (spec.k < 1) throw std::domain_error("bound spec requires k >= 1");
  if (spec.N < 1) throw std::domain_error("bound spec requires N >= 1");
  if (spec.family == BoundFamily::classic && spec.N < spec.k) {
    throw std::domain_error("classic bound requires N >= k");
  }
}

double phi_c(double epsilon, const BoundSpec& spec) {
  require_family(spec, BoundFamily::classic);
  validate(spec);
  validate_epsilon(epsilon);
  if (epsilon == 0.0) return 1.0;
  if (epsilon == 1.0) return 0.0;

  const double log_eps = std::log(epsilon);
  const double log_1m = std::log1p(-epsilon);
  CompensatedSum sum;
  for (int i = 0; i < spec.k; ++i) {
    sum.add(std::exp(log_choose(spec.N, i) + i * log_eps + (spec.N - i) * log_1m));
  }
  return std::clamp(sum.value(), 0.0, 1.0);
}

double phi_a(double epsilon, const BoundSpec& spec) {
  require_family(spec, BoundFamily::additive);
  validate(spec);
  validate_epsilon(epsilon);
  return spec.k * std::pow(1.0 - epsilon, spec.N);
}

double phi_ie(double epsilon, const BoundSpec& spec) {
  require_family(spec, BoundFamily::inclusion_exclusion);
  validate(spec);
  validate_epsilon(epsilon);
  if (epsilon > 1.0 / spec.k) {
    throw std::range_error("inclusion-exclusion bound is only valid for epsilon <= 1/k");
  }

  CompensatedSum sum;
  const long double eps_l = epsilon;
  for (int i = 1; i <= spec.k; ++i) {
    // coef = sum_{j=0}^{k-i} C(i-1+j, j), built by the ratio recurrence
    // C(i+j, j+1) = C(i-1+j, j) * (i+j) / (j+1).  Exact in double for the
    // dimensions this library targets (coef = C(k, i) <= 2^k).
    double coef = 0.0;
    double c = 1.0;
    for (int j = 0; j <= spec.k - i; ++j) {
      coef += c;
      c = c * (i + j) / (j + 1.0);
    }
    // (1 - i eps)^N via log1p in extended precision.  Forming 1 - i*eps in
    // double costs ~N/(1 - i eps) ulp after the power, and the alternating
    // sum amplifies term error by the coefficient mass (~2^k), which is too
    // coarse at large k and N.
    const long double frac = i * eps_l;
    long double term = 0.0L;
    if (frac < 1.0L) {
      term = coef * std::exp(static_cast<long double>(spec.N) * std::log1p(-frac));
    }
    sum.add((i % 2 == 1) ? term : -term);
  }
  return sum.value();
}

double evaluate_bound(double epsilon, const BoundSpec& spec) {
  switch (spec.family) {
    case BoundFamily::classic: return phi_c(epsilon, spec);
    case BoundFamily::additive: return phi_a(epsilon, spec);
    case BoundFamily::inclusion_exclusion: return phi_ie(epsilon, spec);
  }
  throw std::domain_error("unknown bound family enumerator");
}

double invert_bound(double beta, const BoundSpec& spec) {
  validate(spec);
  if (!std::isfinite(beta) || beta <= 0.0) {
    throw std::domain_error("invert_bound requires beta > 0");
  }

  if (spec.family == BoundFamily::additive) {
    // k (1-eps)^N = beta  has the closed form  eps = 1 - (beta/k)^(1/N).
    if (beta > spec.k) {
      throw std::domain_error("additive bound never exceeds k; beta is unattainable");
    }
    return 1.0 - std::pow(beta / spec.k, 1.0 / spec.N);
  }

  const bool ie = spec.family == BoundFamily::inclusion_exclusion;
  if (beta > 1.0) {
    throw std::domain_error("beta must lie in (0,1] for this family");
  }
  double lo = 0.0;
  double hi = ie ? 1.0 / spec.k : 1.0;
  if (ie) {
    double floor_val = phi_ie(hi, spec);
    if (beta < floor_val) {
      throw std::range_error(
          "beta below the inclusion-exclusion bound at epsilon = 1/k; "
          "no root on the validity interval");
    }
  }
  // evaluate_bound(0) = 1 >= beta and evaluate_bound(hi) <= beta, and the
  // function is continuous and strictly decreasing in between: bisect until
  // the bracket collapses to adjacent doubles (55-60 steps; capped well
  // above that for safety).
  for (int it = 0; it < 200 && hi - lo > 1e-15 * (1.0 + hi); ++it) {
    double mid = 0.5 * (lo + hi);
    if (evaluate_bound(mid, spec) >= beta) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace scenopt

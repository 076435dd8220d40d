// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

namespace scenopt {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  Eigen::VectorXd x;        // primal point, valid when status == optimal
  double objective = 0.0;   // c'x at that point
};

// Minimizes c'x subject to A x <= b, x >= 0.
//
// Dense two-phase tableau simplex.  Entering variables are chosen by Bland's
// smallest-index rule (with a tolerance-based tie-break on the ratio test),
// which makes the pivot sequence deterministic and prevents cycling.  Meant
// for the small, repeatedly re-solved programs produced by a cutting-plane
// loop: hundreds of rows, tens of columns.  Not meant for large or badly
// scaled instances.
LpSolution solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                    const Eigen::VectorXd& c);

}  // namespace scenopt

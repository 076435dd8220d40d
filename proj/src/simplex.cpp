// Copyright (c) 2026 the scenopt developers.
// SPDX-License-Identifier: Apache-2.0
#include "scenopt/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace scenopt {

namespace {

constexpr double kReducedCostTol = 1e-9;  // entering-candidate threshold
constexpr double kPivotTol = 1e-11;       // smallest acceptable pivot element
constexpr double kRatioTie = 1e-9;        // ratio-test tie window
constexpr double kPhase1Tol = 1e-7;       // residual artificial mass => infeasible

}  // namespace

LpSolution solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                    const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) {
    throw std::invalid_argument("solve_lp: dimension mismatch");
  }

  int p = 0;  // artificial count: one per negative-rhs row
  for (int i = 0; i < m; ++i) {
    if (b(i) < 0.0) ++p;
  }
  const int art0 = n + m;       // first artificial column
  const int ncols = n + m + p;  // structural + slack + artificial
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, ncols + 1);
  std::vector<int> basis(m);

  std::vector<int> art_row(p);  // the row each artificial was created for
  {
    int a = 0;
    for (int i = 0; i < m; ++i) {
      const double sign = (b(i) < 0.0) ? -1.0 : 1.0;
      T.block(i, 0, 1, n) = sign * A.row(i);
      T(i, n + i) = sign;  // slack
      T(i, ncols) = sign * b(i);
      if (b(i) < 0.0) {
        T(i, art0 + a) = 1.0;
        basis[i] = art0 + a;
        art_row[a] = i;
        ++a;
      } else {
        basis[i] = n + i;
      }
    }
  }

  auto pivot = [&](int row, int col, Eigen::RowVectorXd& red) {
    T.row(row) /= T(row, col);
    for (int i = 0; i < m; ++i) {
      if (i == row) continue;
      const double f = T(i, col);
      if (f != 0.0) T.row(i) -= f * T.row(row);
    }
    const double f = red(col);
    if (f != 0.0) red -= f * T.row(row);
    basis[row] = col;
  };

  // Returns true on convergence, false when an improving column has no
  // blocking row (unbounded ray).
  auto run = [&](Eigen::RowVectorXd& red, int allowed_end) {
    const long max_pivots = 2000 + 200L * (m + ncols);
    for (long it = 0; it < max_pivots; ++it) {
      int enter = -1;
      for (int j = 0; j < allowed_end; ++j) {
        if (red(j) < -kReducedCostTol) {
          enter = j;
          break;  // Bland: smallest improving index
        }
      }
      if (enter < 0) return true;

      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m; ++i) {
        if (T(i, enter) <= kPivotTol) continue;
        const double ratio = T(i, ncols) / T(i, enter);
        if (leave < 0 || ratio < best - kRatioTie) {
          leave = i;
          best = ratio;
        } else if (ratio <= best + kRatioTie && basis[i] < basis[leave]) {
          leave = i;
          if (ratio < best) best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter, red);
    }
    throw std::runtime_error("solve_lp: pivot limit exceeded");
  };

  auto reduced_costs = [&](const Eigen::RowVectorXd& cost) {
    Eigen::RowVectorXd red = Eigen::RowVectorXd::Zero(ncols + 1);
    red.head(ncols) = cost;
    for (int i = 0; i < m; ++i) {
      const double cb = cost(basis[i]);
      if (cb != 0.0) red -= cb * T.row(i);
    }
    return red;
  };

  LpSolution out;

  if (p > 0) {
    Eigen::RowVectorXd cost1 = Eigen::RowVectorXd::Zero(ncols);
    cost1.tail(p).setOnes();
    Eigen::RowVectorXd red1 = reduced_costs(cost1);
    run(red1, ncols);  // phase 1 is always bounded below by 0
    if (-red1(ncols) > kPhase1Tol) {
      out.status = LpStatus::infeasible;
      return out;
    }
    // Pivot leftover artificials out wherever the row still has structural or
    // slack support; rows without it are redundant and keep a zero-valued
    // artificial that phase 2 never touches.
    for (int i = 0; i < m; ++i) {
      if (basis[i] < art0) continue;
      for (int j = 0; j < art0; ++j) {
        if (std::abs(T(i, j)) > kPivotTol) {
          pivot(i, j, red1);
          break;
        }
      }
    }
  }

  Eigen::RowVectorXd cost2 = Eigen::RowVectorXd::Zero(ncols);
  cost2.head(n) = c.transpose();
  Eigen::RowVectorXd red2 = reduced_costs(cost2);
  if (!run(red2, art0)) {
    out.status = LpStatus::unbounded;
    return out;
  }

  out.status = LpStatus::optimal;

  // The rhs column accumulates rounding from every pivot in the chain, which
  // after a few hundred eliminations sits near 1e-9 -- too coarse for callers
  // that add cuts only a few nanounits deep and expect the vertex to honour
  // them.  Re-solve the final basis against the original data and keep the
  // refined point when it reproduces b at least as well.
  Eigen::VectorXd xb(m);
  for (int i = 0; i < m; ++i) xb(i) = T(i, ncols);
  {
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
      const int j = basis[i];
      if (j < n) {
        B.col(i) = A.col(j);
      } else if (j < art0) {
        B(j - n, i) = 1.0;
      } else {
        const int r = art_row[j - art0];
        B(r, i) = (b(r) < 0.0) ? -1.0 : 1.0;
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
    if (lu.isInvertible()) {
      const Eigen::VectorXd refined = lu.solve(b);
      if (refined.minCoeff() >= -kReducedCostTol &&
          (B * refined - b).lpNorm<Eigen::Infinity>() <=
              (B * xb - b).lpNorm<Eigen::Infinity>()) {
        xb = refined.cwiseMax(0.0);
      }
    }
  }

  out.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) out.x(basis[i]) = xb(i);
  }
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace scenopt

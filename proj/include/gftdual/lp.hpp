#pragma once

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace gftdual {

enum class Relation { LessEqual, GreaterEqual, Equal };

enum class LpStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LpStatus status) noexcept;

struct LinearConstraint {
  Eigen::VectorXd coefficients;
  Relation relation = Relation::LessEqual;
  double rhs = 0.0;
};

/// minimize objective^T y subject to the constraint rows and per-variable
/// bounds. Variables are free unless bounded; an infinite bound means none.
struct LinearProgram {
  explicit LinearProgram(int num_variables);

  int num_variables() const noexcept { return static_cast<int>(objective.size()); }
  void add_constraint(Eigen::VectorXd coefficients, Relation relation, double rhs);

  Eigen::VectorXd objective;
  std::vector<LinearConstraint> constraints;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd y;
  double objective = 0.0;
  /// Shadow price of each constraint row, d(optimal objective) / d(rhs).
  /// Non-positive for <= rows and non-negative for >= rows of a minimization.
  Eigen::VectorXd duals;
  /// Total artificial infeasibility left at the end of phase 1.
  double phase1_infeasibility = 0.0;
  int pivots = 0;
};

struct LpOptions {
  double feasibility_tol = 1e-8;
  double pivot_tol = 1e-11;
  double cost_tol = 1e-9;
  int max_pivots = 200000;
};

/// Two-phase dense tableau simplex with Bland's rule.
///
/// Standard form: a variable with a finite lower bound l is shifted to
/// y = l + y' (an upper bound u then becomes the row y' <= u - l); a variable
/// with only an upper bound is reflected, y = u - y'; a free variable is split
/// into y = y+ - y-. Rows are sign-normalized to a non-negative right-hand
/// side. Phase 1 minimizes the sum of artificials on >= and = rows.
///
/// Throws Error(NumericalBreakdown) when the pivot budget is exhausted or the
/// returned point violates a constraint by more than feasibility_tol * (1 + |b|).
LpResult solve_lp(const LinearProgram& program, const LpOptions& options = {});

}  // namespace gftdual

#pragma once

#include <vector>

#include "arat/linalg.hpp"

namespace arat {

/// Linear program in the form used throughout the solver:
///
///   maximize    objective . x
///   subject to  eq_rows[i]  . x  =  eq_rhs[i]
///               ge_rows[i]  . x  >= ge_rhs[i]
///               lower <= x <= upper   (entrywise)
///
/// `lower` and `upper` may be left empty, meaning 0 and +infinity
/// respectively.  Individual lower bounds may be -infinity (free
/// variables) and individual upper bounds +infinity.
struct LpProblem {
  Vec objective;
  std::vector<Vec> eq_rows;
  Vec eq_rhs;
  std::vector<Vec> ge_rows;
  Vec ge_rhs;
  Vec lower;
  Vec upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

/// Optimal solutions are basic feasible points; `eq_duals` / `ge_duals`
/// hold one dual value per input row (zero for rows detected as
/// redundant), populated only when status == Optimal.  Duals are signed as
/// sensitivities d(objective)/d(rhs), so the dual of an inactive >= row is
/// zero and the dual of an active one is <= 0 in a maximization.
struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Vec x;
  double objective = 0.0;
  Vec eq_duals;
  Vec ge_duals;
};

/// Two-phase dense simplex with Bland's anti-cycling rule.  Deterministic
/// given identical input.  Feasibility and optimality tolerances are 1e-9,
/// pivot eligibility 1e-13 relative to row scale.  Infeasible / Unbounded
/// are returned as statuses; malformed input (mismatched dimensions,
/// non-finite coefficients) raises std::invalid_argument.
LpSolution lp_solve(const LpProblem& lp);

}  // namespace arat

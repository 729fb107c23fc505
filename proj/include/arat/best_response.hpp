#pragma once

#include "arat/game.hpp"
#include "arat/lp.hpp"
#include "arat/occupation.hpp"

namespace arat {

/// Constrained best-response data for one player against a fixed opponent
/// policy.  With the opponent averaged out the player faces a single-agent
/// problem: induced_kernel[x][a][y] is the transition law, `objective` and
/// `constraint` the averaged reward and constraint coefficients (both
/// affine in the opponent policy), `levels` the thresholds.
struct BestResponseProblem {
  int player = 1;
  StationaryPolicy opponent;
  Table3 induced_kernel;           // [x][a][y]
  Table2 objective;                // [x][a]
  std::vector<Table2> constraint;  // p tables [x][a]
  Vec levels;                      // rho_player

  std::vector<int> var_offset;  // flattened index of (x, 0)
  int num_vars = 0;
};

BestResponseProblem build_br_problem(const GameInstance& g, int player,
                                     const StationaryPolicy& opponent);

/// The best-response linear program over occupation marginals gamma(x,a):
/// one redundant total-mass equality (kept: it helps conditioning), one
/// flow equality per state, and one >= row per constraint component.  Any
/// feasible point is the occupation marginal of some policy against the
/// opponent, and conversely.
LpProblem build_feasible_lp(const GameInstance& g, int player, const StationaryPolicy& opponent);

struct BestResponseResult {
  bool optimal = false;  // false means the constrained set is empty
  MarginalMeasure marginal;
  StationaryPolicy policy;
  double value = 0.0;
  Vec constraint_values;
};

/// Solves the best-response LP and disintegrates the optimizer into a
/// policy.  Re-evaluating that policy against the opponent through
/// occupation_measure reproduces value and constraints to within 1e-7.
BestResponseResult constrained_best_response(const GameInstance& g, int player,
                                             const StationaryPolicy& opponent);

struct SlaterResult {
  double margin = 0.0;      // max over gamma of min_k (C_k(gamma) - rho_k)
  MarginalMeasure witness;  // attaining marginal
};

/// Best achievable uniform constraint slack against this opponent.  A
/// positive margin certifies strict feasibility of the best-response
/// problem; a nonpositive one certifies that the levels are (near-)
/// unattainable.  With p == 0 the margin is +infinity and the witness is
/// the uniform policy's marginal.
SlaterResult slater_margin(const GameInstance& g, int player, const StationaryPolicy& opponent);

}  // namespace arat

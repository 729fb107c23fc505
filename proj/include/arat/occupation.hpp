#pragma once

#include "arat/game.hpp"
#include "arat/linalg.hpp"

namespace arat {

/// Stationary randomized policy for one player: prob[x][a] is the chance of
/// playing the a-th feasible action in state x.  Rows are distributions
/// over the state's feasible actions.
struct StationaryPolicy {
  int player = 1;
  Table2 prob;
};

/// Discounted occupation measure of a policy profile, table plus cached
/// marginals.  joint[x][a1][a2] carries total mass one; x_marginal,
/// marginal1 (over states x own actions of player 1) and marginal2 are the
/// corresponding sums.
struct OccupationMeasure {
  Table3 joint;
  Vec x_marginal;
  Table2 marginal1;
  Table2 marginal2;
};

/// Occupation measure marginalized onto states x one player's actions.
struct MarginalMeasure {
  int player = 1;
  Table2 table;
  Vec x_marginal;
};

StationaryPolicy uniform_policy(const GameInstance& g, int player);

/// Throws std::invalid_argument when the policy shape does not match the
/// instance's action sets (or the player tag is not 1 or 2).
void check_policy_shape(const GameInstance& g, const StationaryPolicy& pi, int player);

/// Recomputes the state marginal of a [x][a] table.
MarginalMeasure make_marginal(const GameInstance& g, int player, Table2 table);

/// State transition matrix under a fixed profile; row x holds the
/// distribution of the next state, P(x -> y) = sum over joint actions of
/// pi1(a1|x) pi2(a2|x) (q1(y,x,a1) + q2(y,x,a2)).
Matrix kernel_under_profile(const GameInstance& g, const StationaryPolicy& pi1,
                            const StationaryPolicy& pi2);

/// State marginal of the occupation measure: the unique solution of
///   mu = (1-beta) eta + beta P' mu,
/// solved with solve_linear on I - beta P'.  The result is a probability
/// vector dominating (1-beta) eta entrywise.
Vec occupation_x_marginal(const GameInstance& g, const StationaryPolicy& pi1,
                          const StationaryPolicy& pi2);

/// Full occupation measure; the joint table is the product
/// x_marginal(x) pi1(a1|x) pi2(a2|x).
OccupationMeasure occupation_measure(const GameInstance& g, const StationaryPolicy& pi1,
                                     const StationaryPolicy& pi2);

/// Expected discounted reward of `player`, integrated component by
/// component against the two action marginals.
double payoff(const GameInstance& g, const OccupationMeasure& mu, int player);

/// Expected discounted constraint vector of `player`, length p.
Vec constraint_value(const GameInstance& g, const OccupationMeasure& mu, int player);

/// Conditional policy of a marginal measure: pi(a|x) = table[x][a] /
/// x_marginal(x) where the state mass exceeds 1e-12, uniform over the
/// feasible actions elsewhere.
StationaryPolicy disintegrate(const GameInstance& g, const MarginalMeasure& gamma);

/// Truncated-series approximation (1-beta) sum_{t<=T} beta^t d_t with
/// forward-propagated state distributions d_t.  Total mass is
/// 1 - beta^(T+1), deliberately short of one; used as an independent check
/// of occupation_measure.
OccupationMeasure truncated_series_oracle(const GameInstance& g, const StationaryPolicy& pi1,
                                          const StationaryPolicy& pi2, int horizon);

}  // namespace arat

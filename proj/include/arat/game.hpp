#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arat/linalg.hpp"

namespace arat {

using Table2 = std::vector<std::vector<double>>;
using Table3 = std::vector<Table2>;
using Table4 = std::vector<Table3>;

/// A two-player constrained stochastic game with additive rewards and
/// additive transitions.  Player 1 picks from actions1[x], player 2 from
/// actions2[x]; action sets may differ per state, so every [state][action]
/// table below is ragged.
///
/// Reward components:  r_1(x,a1,a2) = reward1_own(x,a1) + reward1_opp(x,a2)
///                     r_2(x,a1,a2) = reward2_opp(x,a1) + reward2_own(x,a2)
/// Constraint components (p-vectors per entry) follow the same split.
///
/// Transition components are indexed q1[y][x][a1], q2[y][x][a2]: the
/// probability of moving from x to y is q1(y,x,a1) + q2(y,x,a2).  For a
/// valid instance the mass sum_y q1(y,x,a1) depends only on x (and likewise
/// for q2), and the two masses add to one.
struct GameInstance {
  std::vector<std::string> states;
  std::vector<std::vector<std::string>> actions1;
  std::vector<std::vector<std::string>> actions2;

  double beta = 0.0;  // discount factor, in (0,1)
  Vec eta;            // initial distribution over states
  int p = 0;          // number of constraint components per player
  Vec rho1, rho2;     // constraint levels, length p

  Table2 reward1_own, reward1_opp;  // [x][a1], [x][a2]
  Table2 reward2_own, reward2_opp;  // [x][a2], [x][a1]

  Table3 constraint1_own, constraint1_opp;  // [x][a1][k], [x][a2][k]
  Table3 constraint2_own, constraint2_opp;  // [x][a2][k], [x][a1][k]

  Table3 q1, q2;  // [y][x][a1], [y][x][a2]

  int num_states() const { return static_cast<int>(states.size()); }
  int num_actions1(int x) const { return static_cast<int>(actions1[x].size()); }
  int num_actions2(int x) const { return static_cast<int>(actions2[x].size()); }
};

enum class ViolationCode {
  StochasticityViolation,
  ARATInconsistency,
  EmptyActionSet,
  BadDiscount,
  BadInitialDistribution,
  NegativeDensity,
};

const char* violation_code_name(ViolationCode code);

/// One failed invariant.  The shape of `indices` depends on the code:
///   StochasticityViolation  {x, a1, a2}   residual |sum - 1|
///   ARATInconsistency       {player, x}   residual max-min action mass
///   EmptyActionSet          {player, x}
///   BadDiscount             {}            residual beta
///   BadInitialDistribution  {x} for a negative entry, {} for a bad sum
///   NegativeDensity         {player, y, x, a}  residual -q
struct Violation {
  ViolationCode code;
  std::vector<int> indices;
  double residual = 0.0;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;
};

struct InvalidInstanceError : std::runtime_error {
  explicit InvalidInstanceError(const std::string& msg, ValidationReport rep)
      : std::runtime_error(msg), report(std::move(rep)) {}
  ValidationReport report;
};

/// Checks every numeric invariant (tolerance 1e-12 on the stochastic sums)
/// and returns all violations found.  Structurally incoherent containers
/// (mismatched table shapes) raise std::invalid_argument instead.
ValidationReport validate(const GameInstance& g);

/// Full transition table Q[x][a1][a2][y].  Rejects invalid instances with
/// InvalidInstanceError naming the first failed invariant.
Table4 assemble_kernel(const GameInstance& g);

/// Total reward r_player(x,a1,a2) as a [x][a1][a2] table.
Table3 assemble_reward(const GameInstance& g, int player);

/// Total constraint vector c_player(x,a1,a2) as a [x][a1][a2][k] table.
Table4 assemble_constraint(const GameInstance& g, int player);

/// Deterministic random instance.  Same arguments always produce the same
/// instance, byte for byte.  Construction (all draws from one SplitMix64
/// stream seeded with `seed`, in this order):
///   1. s1(x) uniform in [0.2, 0.8];
///   2. q1 columns: per (x,a1) draw nX values 0.1 + u and scale the column
///      to mass s1(x); q2 columns likewise to mass 1 - s1(x);
///   3. rewards uniform in [-1,1] in table order r1_own, r1_opp, r2_own,
///      r2_opp, then constraints c1_own, c1_opp, c2_own, c2_opp;
///   4. eta from exponential spacings, normalized;
///   5. rho_i = C_i(uniform profile) - 0.05, leaving the uniform profile
///      feasible with margin 0.05.
GameInstance generate_random(std::uint64_t seed, int num_states, int num_actions1,
                             int num_actions2, int p, double beta);

}  // namespace arat

#pragma once

#include <array>
#include <string>

#include "arat/best_response.hpp"
#include "arat/game.hpp"
#include "arat/occupation.hpp"

namespace arat {

struct IterationConfig {
  int max_iterations = 500;
  double damping = 0.5;       // in (0, 1]
  double tolerance = 1e-8;    // stop when the max policy change drops below
  double epsilon = 1e-6;      // certification slack
};

/// Result of checking one profile against the epsilon-equilibrium
/// definition: each player's constraints hold with slack >= -epsilon and no
/// feasible deviation improves the payoff by more than epsilon.
struct NashVerification {
  double epsilon = 0.0;
  std::array<double, 2> payoffs{};
  std::array<Vec, 2> constraints{};
  std::array<double, 2> feasibility_slack{};  // min_k (C_i - rho_i), +inf if p == 0
  std::array<bool, 2> feasibility_ok{};
  std::array<double, 2> regret{};  // best-response value minus achieved payoff
  std::array<bool, 2> regret_ok{};
  std::array<bool, 2> deviation_infeasible{};  // no feasible deviation exists at all
  bool passed = false;
};

NashVerification verify_epsilon_nash(const GameInstance& g, const StationaryPolicy& pi1,
                                     const StationaryPolicy& pi2, double epsilon);

/// Largest constraint violation or excess regret of a verification record
/// (zero for a certified profile).
double nash_defect(const NashVerification& v);

struct EquilibriumReport {
  StationaryPolicy pi1, pi2;
  bool converged = false;  // stopping tolerance reached
  int iterations = 0;
  Vec policy_change_trace;                             // one entry per iteration
  std::vector<std::array<double, 2>> slater_margins;   // initial + one per iteration
  bool slater_failure = false;                         // some margin was <= 0
  bool feasibility_restoration_used = false;
  std::string failure_note;  // nonempty when the search stopped on an infeasible step
  NashVerification verification;
};

/// Damped best-response iteration from the uniform profile.  Each round
/// solves both players' constrained best responses against the current
/// profile and moves every policy a step of size `damping` toward its
/// response.  Nonconvergence within max_iterations is reported, never
/// thrown.  When a best response comes back infeasible the iteration mixes
/// the current marginal toward a positive-margin Slater witness if one
/// exists, and otherwise stops with the failure recorded.
EquilibriumReport iterate(const GameInstance& g, const IterationConfig& config = {});

/// Feasibility-restoring mixture (1 - sqrt(eps)) target + sqrt(eps) slater.
/// If the target violates the levels by at most eps and the witness has
/// margin delta, the mixture's constraint values are at least
///   rho + sqrt(eps) * (delta - (1 - sqrt(eps)) * sqrt(eps)).
/// Requires eps in (0, 1].
MarginalMeasure mix_restore_feasibility(const MarginalMeasure& target,
                                        const MarginalMeasure& slater, double eps);

struct PerturbedStep {
  GameInstance instance;  // eta and levels replaced per the schedule
  EquilibriumReport report;
};

struct PerturbedSequenceResult {
  double level_shift_scale = 0.0;  // 2 x largest |constraint component|
  std::vector<PerturbedStep> steps;
  NashVerification final_on_original;  // last step's profile, original instance
};

/// Vanishing-perturbation schedule: step n solves the instance with
///   eta_n   = (n/(n+1)) eta + (1/(n+1)) uniform
///   rho_i,n = rho_i - (scale/(n+1)) 1
/// for n = 0..n_max, where scale bounds how far a constraint value can move
/// when eta is exchanged for the uniform distribution.  Every perturbed
/// instance has full-support eta and strictly slackened levels, so the
/// Slater margin the generator guarantees survives perturbation; the final
/// step's profile is re-verified on the unmodified instance.
PerturbedSequenceResult perturbed_sequence(const GameInstance& g, int n_max,
                                           const IterationConfig& config = {});

}  // namespace arat

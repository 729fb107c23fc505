#pragma once

#include <array>
#include <cstdint>

#include "arat/game.hpp"
#include "arat/occupation.hpp"

namespace arat {

struct SimulationConfig {
  int horizon = 1;          // trajectory length T; weights cover t = 0..T
  long episodes = 1;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimate of the occupation measure and the discounted
/// payoff / constraint values.  The occupation table carries the
/// deterministic truncation mass 1 - beta^(T+1); standard errors are
/// sample standard deviations of the per-episode estimates divided by
/// sqrt(episodes).
struct SimulationEstimate {
  Table3 occupation;  // [x][a1][a2]
  std::array<double, 2> payoff{};
  std::array<double, 2> payoff_se{};
  std::array<Vec, 2> constraint{};
  std::array<Vec, 2> constraint_se{};
};

/// One episode's weighted visit table and discounted sums.  Episode e of a
/// run draws from the substream episode_stream_seed(seed, e); see
/// arat/rng.hpp.  Draw order within an episode: initial state, then per
/// step action 1, action 2, next state.
struct EpisodeSample {
  Table3 occupation;
  std::array<double, 2> payoff{};
  std::array<Vec, 2> constraint{};
};

EpisodeSample simulate_episode(const GameInstance& g, const StationaryPolicy& pi1,
                               const StationaryPolicy& pi2, int horizon, std::uint64_t seed,
                               std::uint64_t episode);

/// Fixed-horizon simulation: every episode accumulates weights
/// (1-beta) beta^t for t = 0..T on the visited tuples.  Episodes are
/// averaged in index order; because each episode owns an independent
/// substream the result does not depend on evaluation order.
SimulationEstimate simulate(const GameInstance& g, const StationaryPolicy& pi1,
                            const StationaryPolicy& pi2, const SimulationConfig& config);

}  // namespace arat

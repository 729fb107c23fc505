#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "arat/game.hpp"
#include "arat/occupation.hpp"
#include "arat/simulate.hpp"
#include "fixtures.hpp"

using namespace arat;

namespace {

// One absorbing state, one action per player, constant reward 1 and
// constraint 1.  Every trajectory is identical, so any simulation of it is
// deterministic: mass and payoff are exactly 1 - beta^(T+1) and the
// standard errors are exactly zero (all quantities stay dyadic for
// beta = 1/2, so even the arithmetic is exact).
GameInstance absorbing() {
  GameInstance g;
  g.states = {"s0"};
  g.actions1 = {{"a"}};
  g.actions2 = {{"b"}};
  g.beta = 0.5;
  g.eta = {1.0};
  g.p = 1;
  g.rho1 = {0.0};
  g.rho2 = {0.0};
  g.reward1_own = {{1.0}};
  g.reward1_opp = {{0.0}};
  g.reward2_own = {{1.0}};
  g.reward2_opp = {{0.0}};
  g.constraint1_own = {{{1.0}}};
  g.constraint1_opp = {{{0.0}}};
  g.constraint2_own = {{{1.0}}};
  g.constraint2_opp = {{{0.0}}};
  g.q1 = {{{0.5}}};
  g.q2 = {{{0.5}}};
  return g;
}

}  // namespace

TEST_CASE("simulate: deterministic chain is reproduced bit for bit") {
  const GameInstance g = absorbing();
  REQUIRE(validate(g).ok);
  SimulationConfig cfg;
  cfg.horizon = 10;
  cfg.episodes = 8;
  cfg.seed = 1;
  const SimulationEstimate est =
      simulate(g, uniform_policy(g, 1), uniform_policy(g, 2), cfg);
  const double mass = 1.0 - std::pow(0.5, 11);
  CHECK(est.occupation[0][0][0] == mass);
  CHECK(est.payoff[0] == mass);
  CHECK(est.payoff[1] == mass);
  CHECK(est.payoff_se[0] == 0.0);
  CHECK(est.payoff_se[1] == 0.0);
  CHECK(est.constraint[0][0] == mass);
  CHECK(est.constraint_se[0][0] == 0.0);
}

TEST_CASE("simulate: same configuration gives the same estimate") {
  SplitMix64 rng(77);
  const GameInstance g = generate_random(21, 3, 2, 2, 1, 0.8);
  const StationaryPolicy pi1 = fixtures::random_policy(g, 1, rng);
  const StationaryPolicy pi2 = fixtures::random_policy(g, 2, rng);
  SimulationConfig cfg;
  cfg.horizon = 40;
  cfg.episodes = 500;
  cfg.seed = 99;
  const SimulationEstimate a = simulate(g, pi1, pi2, cfg);
  const SimulationEstimate b = simulate(g, pi1, pi2, cfg);
  CHECK(a.payoff[0] == b.payoff[0]);
  CHECK(a.payoff[1] == b.payoff[1]);
  CHECK(a.payoff_se[0] == b.payoff_se[0]);
  CHECK(a.constraint[0][0] == b.constraint[0][0]);
  for (int x = 0; x < g.num_states(); ++x) {
    for (int i = 0; i < g.num_actions1(x); ++i) {
      for (int j = 0; j < g.num_actions2(x); ++j) {
        CHECK(a.occupation[x][i][j] == b.occupation[x][i][j]);
      }
    }
  }
}

TEST_CASE("simulate: episodes decompose into independent substreams") {
  SplitMix64 rng(5);
  const GameInstance g = generate_random(33, 2, 2, 2, 0, 0.7);
  const StationaryPolicy pi1 = fixtures::random_policy(g, 1, rng);
  const StationaryPolicy pi2 = fixtures::random_policy(g, 2, rng);
  SimulationConfig cfg;
  cfg.horizon = 25;
  cfg.episodes = 5;
  cfg.seed = 4242;
  const SimulationEstimate est = simulate(g, pi1, pi2, cfg);
  double sum0 = 0.0;
  for (long e = 0; e < cfg.episodes; ++e) {
    const EpisodeSample s = simulate_episode(g, pi1, pi2, cfg.horizon, cfg.seed, e);
    sum0 += s.payoff[0];
  }
  CHECK(est.payoff[0] == sum0 / cfg.episodes);
  // An episode depends only on (seed, index), not on the batch size.
  const EpisodeSample alone = simulate_episode(g, pi1, pi2, cfg.horizon, cfg.seed, 3);
  const EpisodeSample again = simulate_episode(g, pi1, pi2, cfg.horizon, cfg.seed, 3);
  CHECK(alone.payoff[0] == again.payoff[0]);
  CHECK(alone.payoff[1] == again.payoff[1]);
}

TEST_CASE("simulate: estimates agree with the analytic values at three sigma") {
  const GameInstance g = generate_random(8, 3, 2, 2, 1, 0.8);
  const StationaryPolicy pi1 = uniform_policy(g, 1);
  const StationaryPolicy pi2 = uniform_policy(g, 2);
  const OccupationMeasure mu = occupation_measure(g, pi1, pi2);
  SimulationConfig cfg;
  cfg.horizon = 62;  // 0.8^63 < 1e-6
  cfg.episodes = 20000;
  cfg.seed = 2025;
  const SimulationEstimate est = simulate(g, pi1, pi2, cfg);
  for (int i = 0; i < 2; ++i) {
    const double analytic = payoff(g, mu, i + 1);
    CHECK(est.payoff_se[i] > 0.0);
    CHECK(est.payoff_se[i] < 0.01);
    CHECK(std::fabs(est.payoff[i] - analytic) <= 3.0 * est.payoff_se[i] + 1e-6);
    const Vec c = constraint_value(g, mu, i + 1);
    for (int k = 0; k < g.p; ++k) {
      CHECK(std::fabs(est.constraint[i][k] - c[k]) <= 3.0 * est.constraint_se[i][k] + 1e-6);
    }
  }
  // The sampled occupation table is close to the analytic one overall.
  double tv = 0.0;
  for (int x = 0; x < g.num_states(); ++x) {
    for (int a = 0; a < g.num_actions1(x); ++a) {
      for (int b = 0; b < g.num_actions2(x); ++b) {
        tv += std::fabs(est.occupation[x][a][b] - mu.joint[x][a][b]);
      }
    }
  }
  CHECK(0.5 * tv <= 0.05);
}

TEST_CASE("simulate: occupation mass is the deterministic truncation mass") {
  SplitMix64 rng(6);
  const GameInstance g = generate_random(14, 2, 2, 1, 0, 0.9);
  const StationaryPolicy pi1 = fixtures::random_policy(g, 1, rng);
  const StationaryPolicy pi2 = fixtures::random_policy(g, 2, rng);
  SimulationConfig cfg;
  cfg.horizon = 30;
  cfg.episodes = 50;
  cfg.seed = 11;
  const SimulationEstimate est = simulate(g, pi1, pi2, cfg);
  double mass = 0.0;
  for (const auto& sx : est.occupation) {
    for (const auto& row : sx) {
      for (double v : row) mass += v;
    }
  }
  CHECK(std::fabs(mass - (1.0 - std::pow(g.beta, 31))) <= 1e-12);
}

TEST_CASE("simulate: argument validation") {
  const GameInstance g = absorbing();
  const StationaryPolicy pi1 = uniform_policy(g, 1);
  const StationaryPolicy pi2 = uniform_policy(g, 2);
  SimulationConfig cfg;
  cfg.horizon = 0;
  cfg.episodes = 1;
  CHECK_THROWS_AS(simulate(g, pi1, pi2, cfg), std::invalid_argument);
  cfg.horizon = 1;
  cfg.episodes = 0;
  CHECK_THROWS_AS(simulate(g, pi1, pi2, cfg), std::invalid_argument);
  cfg.episodes = 1;
  StationaryPolicy bad{1, {{1.0, 0.0}}};
  CHECK_THROWS_AS(simulate(g, bad, pi2, cfg), std::invalid_argument);
}

#include <cmath>
#include <limits>

#include <doctest.h>

#include "arat/best_response.hpp"
#include "arat/game.hpp"
#include "arat/lp.hpp"
#include "arat/occupation.hpp"
#include "arat/rng.hpp"
#include "fixtures.hpp"

using namespace arat;

namespace {

// Payoff and constraints of (pi for `player`) against the fixed opponent.
struct Evaluated {
  double value = 0.0;
  Vec constraints;
};

Evaluated evaluate(const GameInstance& g, int player, const Table2& prob,
                   const StationaryPolicy& opponent) {
  StationaryPolicy mine{player, prob};
  const StationaryPolicy& pi1 = player == 1 ? mine : opponent;
  const StationaryPolicy& pi2 = player == 1 ? opponent : mine;
  const OccupationMeasure mu = occupation_measure(g, pi1, pi2);
  return {payoff(g, mu, player), constraint_value(g, mu, player)};
}

bool feasible(const Evaluated& ev, const Vec& rho, double slack = 0.0) {
  for (std::size_t k = 0; k < rho.size(); ++k) {
    if (ev.constraints[k] < rho[k] - slack) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("constrained response on the single-state fixture: even mixture, value 1/2") {
  const GameInstance g = fixtures::single_state();
  const StationaryPolicy pi2 = uniform_policy(g, 2);
  const BestResponseResult br = constrained_best_response(g, 1, pi2);
  REQUIRE(br.optimal);
  CHECK(std::fabs(br.value - 0.5) <= 1e-9);
  CHECK(std::fabs(br.policy.prob[0][0] - 0.5) <= 1e-9);
  CHECK(std::fabs(br.policy.prob[0][1] - 0.5) <= 1e-9);
  CHECK(std::fabs(br.constraint_values[0] - 0.5) <= 1e-9);

  // Grid oracle over the one free probability, step 0.001.
  double best = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double pa = i / 1000.0;
    const Evaluated ev = evaluate(g, 1, {{pa, 1.0 - pa}}, pi2);
    if (feasible(ev, g.rho1)) best = std::max(best, ev.value);
  }
  CHECK(std::fabs(br.value - best) <= 1e-9);
}

TEST_CASE("constrained response without constraints is the greedy choice") {
  GameInstance g = fixtures::single_state();
  g.p = 0;
  g.rho1 = {};
  g.rho2 = {};
  g.constraint1_own = {{{}, {}}};
  g.constraint1_opp = {{{}}};
  g.constraint2_own = {{{}}};
  g.constraint2_opp = {{{}, {}}};
  REQUIRE(validate(g).ok);
  const BestResponseResult br = constrained_best_response(g, 1, uniform_policy(g, 2));
  REQUIRE(br.optimal);
  CHECK(std::fabs(br.value - 1.0) <= 1e-9);
  CHECK(std::fabs(br.policy.prob[0][0] - 1.0) <= 1e-9);
  CHECK(br.constraint_values.empty());
}

TEST_CASE("unattainable levels come back infeasible") {
  GameInstance g = fixtures::single_state();
  g.rho1 = {2.0};  // the constraint value lives in [0, 1]
  const BestResponseResult br = constrained_best_response(g, 1, uniform_policy(g, 2));
  CHECK_FALSE(br.optimal);
}

TEST_CASE("slater margin on the single-state fixture is exactly computable") {
  GameInstance g = fixtures::single_state();
  const StationaryPolicy pi2 = uniform_policy(g, 2);
  g.rho1 = {2.0};
  SlaterResult s = slater_margin(g, 1, pi2);
  CHECK(std::fabs(s.margin + 1.0) <= 1e-9);  // max C = 1, level 2
  g.rho1 = {-1.0};
  s = slater_margin(g, 1, pi2);
  CHECK(std::fabs(s.margin - 2.0) <= 1e-9);  // max C = 1, level -1
  // The witness attains the margin.
  double cw = 0.0;
  for (int a = 0; a < 2; ++a) cw += s.witness.table[0][a] * g.constraint1_own[0][a][0];
  CHECK(cw - g.rho1[0] >= s.margin - 1e-9);
}

TEST_CASE("slater margin with p == 0 is unconstrained") {
  GameInstance g = fixtures::single_state();
  g.p = 0;
  g.rho1 = {};
  g.rho2 = {};
  g.constraint1_own = {{{}, {}}};
  g.constraint1_opp = {{{}}};
  g.constraint2_own = {{{}}};
  g.constraint2_opp = {{{}, {}}};
  const SlaterResult s = slater_margin(g, 1, uniform_policy(g, 2));
  CHECK(s.margin == std::numeric_limits<double>::infinity());
  double mass = 0.0;
  for (const auto& row : s.witness.table) {
    for (double v : row) mass += v;
  }
  CHECK(std::fabs(mass - 1.0) <= 1e-9);
}

TEST_CASE("generated instances keep a slater margin for both players") {
  for (const std::uint64_t seed : {2ULL, 12ULL, 22ULL}) {
    const GameInstance g = generate_random(seed, 3, 2, 2, 2, 0.9);
    for (int player : {1, 2}) {
      const SlaterResult s = slater_margin(g, player, uniform_policy(g, player == 1 ? 2 : 1));
      CHECK(s.margin >= 0.05 - 1e-7);
    }
  }
}

TEST_CASE("no feasible grid policy beats the linear-program response") {
  const GameInstance g = fixtures::two_state();
  SplitMix64 rng(3);
  const StationaryPolicy opp1 = fixtures::random_policy(g, 2, rng);
  const BestResponseResult br1 = constrained_best_response(g, 1, opp1);
  REQUIRE(br1.optimal);
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const Table2 prob{{i / 10.0, 1.0 - i / 10.0}, {j / 10.0, 1.0 - j / 10.0}};
      const Evaluated ev = evaluate(g, 1, prob, opp1);
      if (feasible(ev, g.rho1)) CHECK(ev.value <= br1.value + 1e-6);
    }
  }
  const StationaryPolicy opp2 = fixtures::random_policy(g, 1, rng);
  const BestResponseResult br2 = constrained_best_response(g, 2, opp2);
  REQUIRE(br2.optimal);
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const Table2 prob{{i / 10.0, 1.0 - i / 10.0}, {j / 10.0, 1.0 - j / 10.0}};
      const Evaluated ev = evaluate(g, 2, prob, opp2);
      if (feasible(ev, g.rho2)) CHECK(ev.value <= br2.value + 1e-6);
    }
  }
}

TEST_CASE("tightening the level never improves the response value") {
  const GameInstance g0 = fixtures::two_state();
  const StationaryPolicy opp = uniform_policy(g0, 2);
  double last = std::numeric_limits<double>::infinity();
  for (const double level : {-1.0, 0.0, 0.3, 0.5}) {
    GameInstance g = g0;
    g.rho1 = {level};
    const BestResponseResult br = constrained_best_response(g, 1, opp);
    REQUIRE(br.optimal);
    CHECK(br.value <= last + 1e-9);
    CHECK(br.constraint_values[0] >= level - 1e-9);
    last = br.value;
  }
}

TEST_CASE("responses survive re-evaluation through the occupation measure") {
  SplitMix64 rng(41);
  for (int trial = 0; trial < 15; ++trial) {
    const GameInstance g =
        generate_random(500 + trial, 2 + trial % 3, 1 + trial % 3, 2, trial % 3, 0.8);
    for (int player : {1, 2}) {
      const StationaryPolicy opp = fixtures::random_policy(g, player == 1 ? 2 : 1, rng);
      const BestResponseResult br = constrained_best_response(g, player, opp);
      if (!br.optimal) {
        // The levels were tuned to the uniform profile, so a random
        // opponent can make them unattainable; the margin must agree.
        CHECK(slater_margin(g, player, opp).margin <= 1e-7);
        continue;
      }
      const Evaluated ev = evaluate(g, player, br.policy.prob, opp);
      CHECK(std::fabs(ev.value - br.value) <= 1e-7);
      for (int k = 0; k < g.p; ++k) {
        CHECK(std::fabs(ev.constraints[k] - br.constraint_values[k]) <= 1e-7);
      }
    }
  }
}

TEST_CASE("the response is at least as good as any feasible reference policy") {
  for (const std::uint64_t seed : {31ULL, 32ULL, 33ULL}) {
    const GameInstance g = generate_random(seed, 3, 2, 2, 1, 0.9);
    const StationaryPolicy opp = uniform_policy(g, 2);
    const BestResponseResult br = constrained_best_response(g, 1, opp);
    REQUIRE(br.optimal);
    const Evaluated uni = evaluate(g, 1, uniform_policy(g, 1).prob, opp);
    if (feasible(uni, g.rho1)) CHECK(br.value >= uni.value - 1e-9);
  }
}

TEST_CASE("feasible marginals form a convex set in the linear-program rows") {
  const GameInstance g = fixtures::two_state();
  const StationaryPolicy opp = uniform_policy(g, 2);
  const BestResponseResult br = constrained_best_response(g, 1, opp);
  REQUIRE(br.optimal);
  const SlaterResult sl = slater_margin(g, 1, opp);
  const BestResponseProblem bp = build_br_problem(g, 1, opp);
  const LpProblem lp = build_feasible_lp(g, 1, opp);

  Vec flat(bp.num_vars, 0.0);
  for (int x = 0; x < g.num_states(); ++x) {
    for (int a = 0; a < g.num_actions1(x); ++a) {
      flat[bp.var_offset[x] + a] =
          0.3 * br.marginal.table[x][a] + 0.7 * sl.witness.table[x][a];
    }
  }
  for (std::size_t r = 0; r < lp.eq_rows.size(); ++r) {
    double s = -lp.eq_rhs[r];
    for (int j = 0; j < bp.num_vars; ++j) s += lp.eq_rows[r][j] * flat[j];
    CHECK(std::fabs(s) <= 1e-9);
  }
  for (std::size_t r = 0; r < lp.ge_rows.size(); ++r) {
    double s = 0.0;
    for (int j = 0; j < bp.num_vars; ++j) s += lp.ge_rows[r][j] * flat[j];
    CHECK(s >= lp.ge_rhs[r] - 1e-9);
  }
}

TEST_CASE("build_br_problem averages the opponent out of rewards and constraints") {
  const GameInstance g = fixtures::two_state();
  StationaryPolicy opp{2, {{0.25, 0.75}, {0.5, 0.5}}};
  const BestResponseProblem bp = build_br_problem(g, 1, opp);
  for (int x = 0; x < 2; ++x) {
    const double rbar =
        0.25 * g.reward1_opp[x][0] + 0.75 * g.reward1_opp[x][1];
    const double rbar_used = x == 0 ? rbar : 0.5 * (g.reward1_opp[x][0] + g.reward1_opp[x][1]);
    for (int a = 0; a < 2; ++a) {
      const double want = g.reward1_own[x][a] + (x == 0 ? rbar : rbar_used);
      CHECK(std::fabs(bp.objective[x][a] - want) <= 1e-15);
    }
  }
  // Induced kernel rows are probability vectors.
  for (int x = 0; x < 2; ++x) {
    for (int a = 0; a < 2; ++a) {
      double s = 0.0;
      for (int y = 0; y < 2; ++y) s += bp.induced_kernel[x][a][y];
      CHECK(std::fabs(s - 1.0) <= 1e-12);
    }
  }
}

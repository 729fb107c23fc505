#pragma once

// Hand-built instances shared by the test suites.

#include <string>
#include <vector>

#include "arat/game.hpp"
#include "arat/occupation.hpp"
#include "arat/rng.hpp"

namespace fixtures {

// Two states, two actions per player, p = 1.  Transition components are
// action-independent with masses 0.5/0.5, so every invariant can be checked
// by hand: q1 puts (0.3, 0.2) on (y=0, y=1), q2 puts (0.1, 0.4).
inline arat::GameInstance two_state() {
  arat::GameInstance g;
  g.states = {"s0", "s1"};
  g.actions1 = {{"a0", "a1"}, {"a0", "a1"}};
  g.actions2 = {{"b0", "b1"}, {"b0", "b1"}};
  g.beta = 0.9;
  g.eta = {0.5, 0.5};
  g.p = 1;
  g.rho1 = {0.3};
  g.rho2 = {-1.0};
  g.reward1_own = {{1.0, 0.0}, {0.5, -0.5}};
  g.reward1_opp = {{0.2, -0.2}, {0.0, 0.3}};
  g.reward2_own = {{0.4, 0.1}, {-0.3, 0.6}};
  g.reward2_opp = {{0.0, 0.1}, {0.2, -0.1}};
  g.constraint1_own = {{{0.2}, {0.8}}, {{0.5}, {0.5}}};
  g.constraint1_opp = {{{0.0}, {0.0}}, {{0.0}, {0.0}}};
  g.constraint2_own = {{{0.1}, {0.3}}, {{0.2}, {0.0}}};
  g.constraint2_opp = {{{0.0}, {0.0}}, {{0.0}, {0.0}}};
  g.q1.assign(2, arat::Table2(2));
  g.q2.assign(2, arat::Table2(2));
  for (int y = 0; y < 2; ++y) {
    for (int x = 0; x < 2; ++x) {
      g.q1[y][x] = {y == 0 ? 0.3 : 0.2, y == 0 ? 0.3 : 0.2};
      g.q2[y][x] = {y == 0 ? 0.1 : 0.4, y == 0 ? 0.1 : 0.4};
    }
  }
  return g;
}

// One state, player 1 chooses between two actions, player 2 has one.  The
// constrained response maximizes pi(a0) subject to pi(a1) >= 0.5, so the
// optimum is the even mixture with value 0.5.
inline arat::GameInstance single_state() {
  arat::GameInstance g;
  g.states = {"s0"};
  g.actions1 = {{"a0", "a1"}};
  g.actions2 = {{"b0"}};
  g.beta = 0.9;
  g.eta = {1.0};
  g.p = 1;
  g.rho1 = {0.5};
  g.rho2 = {-1.0};
  g.reward1_own = {{1.0, 0.0}};
  g.reward1_opp = {{0.0}};
  g.reward2_own = {{0.0}};
  g.reward2_opp = {{0.0, 0.0}};
  g.constraint1_own = {{{0.0}, {1.0}}};
  g.constraint1_opp = {{{0.0}}};
  g.constraint2_own = {{{0.0}}};
  g.constraint2_opp = {{{0.0}, {0.0}}};
  g.q1 = {{{0.5, 0.5}}};
  g.q2 = {{{0.5}}};
  return g;
}

// A game whose players do not interact: opponent reward/constraint
// components vanish and both transition components ignore the action, so
// each player's situation is a fixed single-agent problem.
inline arat::GameInstance decoupled(std::uint64_t seed, int nx = 3, int na = 2, double beta = 0.9) {
  arat::SplitMix64 rng(seed);
  arat::GameInstance g;
  for (int x = 0; x < nx; ++x) {
    g.states.push_back("s" + std::to_string(x));
    std::vector<std::string> as, bs;
    for (int a = 0; a < na; ++a) {
      as.push_back("a" + std::to_string(a));
      bs.push_back("b" + std::to_string(a));
    }
    g.actions1.push_back(as);
    g.actions2.push_back(bs);
  }
  g.beta = beta;
  g.p = 1;

  // Action-independent transition components with split masses.
  std::vector<double> s1(nx);
  for (int x = 0; x < nx; ++x) s1[x] = 0.3 + 0.4 * rng.next_double();
  g.q1.assign(nx, arat::Table2(nx));
  g.q2.assign(nx, arat::Table2(nx));
  std::vector<std::vector<double>> t1(nx, std::vector<double>(nx)), t2 = t1;
  for (int x = 0; x < nx; ++x) {
    double m1 = 0.0, m2 = 0.0;
    std::vector<double> u1(nx), u2(nx);
    for (int y = 0; y < nx; ++y) {
      u1[y] = 0.1 + rng.next_double();
      u2[y] = 0.1 + rng.next_double();
      m1 += u1[y];
      m2 += u2[y];
    }
    for (int y = 0; y < nx; ++y) {
      t1[y][x] = u1[y] / m1 * s1[x];
      t2[y][x] = u2[y] / m2 * (1.0 - s1[x]);
    }
  }
  for (int y = 0; y < nx; ++y) {
    for (int x = 0; x < nx; ++x) {
      g.q1[y][x].assign(na, t1[y][x]);
      g.q2[y][x].assign(na, t2[y][x]);
    }
  }

  auto random_row = [&](int n) {
    std::vector<double> row(n);
    for (double& v : row) v = 2.0 * rng.next_double() - 1.0;
    return row;
  };
  for (int x = 0; x < nx; ++x) {
    g.reward1_own.push_back(random_row(na));
    g.reward1_opp.push_back(std::vector<double>(na, 0.0));
    g.reward2_own.push_back(random_row(na));
    g.reward2_opp.push_back(std::vector<double>(na, 0.0));
    arat::Table2 c1(na), c2(na), zero(na, arat::Vec(1, 0.0));
    for (int a = 0; a < na; ++a) {
      c1[a] = {rng.next_double()};
      c2[a] = {rng.next_double()};
    }
    g.constraint1_own.push_back(c1);
    g.constraint1_opp.push_back(zero);
    g.constraint2_own.push_back(c2);
    g.constraint2_opp.push_back(zero);
  }
  g.eta.assign(nx, 1.0 / nx);

  // Levels that leave the uniform profile feasible with a visible margin.
  const arat::StationaryPolicy u1p = arat::uniform_policy(g, 1);
  const arat::StationaryPolicy u2p = arat::uniform_policy(g, 2);
  const arat::OccupationMeasure mu = arat::occupation_measure(g, u1p, u2p);
  g.rho1 = {arat::constraint_value(g, mu, 1)[0] - 0.05};
  g.rho2 = {arat::constraint_value(g, mu, 2)[0] - 0.05};
  return g;
}

// Row-stochastic random policy.
inline arat::StationaryPolicy random_policy(const arat::GameInstance& g, int player,
                                            arat::SplitMix64& rng) {
  arat::StationaryPolicy pi;
  pi.player = player;
  for (int x = 0; x < g.num_states(); ++x) {
    const int na = player == 1 ? g.num_actions1(x) : g.num_actions2(x);
    arat::Vec row(na);
    double total = 0.0;
    for (double& v : row) {
      v = 0.05 + rng.next_double();
      total += v;
    }
    for (double& v : row) v /= total;
    pi.prob.push_back(row);
  }
  return pi;
}

}  // namespace fixtures

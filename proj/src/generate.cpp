#include <cmath>
#include <stdexcept>
#include <string>

#include "arat/game.hpp"
#include "arat/occupation.hpp"
#include "arat/rng.hpp"

namespace arat {

GameInstance generate_random(std::uint64_t seed, int num_states, int num_actions1,
                             int num_actions2, int p, double beta) {
  if (num_states < 1 || num_actions1 < 1 || num_actions2 < 1) {
    throw std::invalid_argument("generate_random: sizes must be >= 1");
  }
  if (p < 0) throw std::invalid_argument("generate_random: p must be >= 0");
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("generate_random: beta must lie in (0,1)");

  SplitMix64 rng(seed);
  GameInstance g;
  g.beta = beta;
  g.p = p;
  const int nx = num_states;

  g.states.resize(nx);
  g.actions1.resize(nx);
  g.actions2.resize(nx);
  for (int x = 0; x < nx; ++x) {
    g.states[x] = "s" + std::to_string(x);
    for (int a = 0; a < num_actions1; ++a) g.actions1[x].push_back("a" + std::to_string(a));
    for (int a = 0; a < num_actions2; ++a) g.actions2[x].push_back("b" + std::to_string(a));
  }

  Vec s1(nx, 0.0);
  for (int x = 0; x < nx; ++x) s1[x] = 0.2 + 0.6 * rng.next_double();

  // Positive raw densities, normalized so player 1's columns carry mass
  // s1(x) and player 2's the complement, independent of the action chosen.
  auto draw_component = [&](Table3& q, int num_actions, bool own1) {
    q.assign(nx, Table2(nx));
    for (int y = 0; y < nx; ++y) {
      for (int x = 0; x < nx; ++x) q[y][x].assign(num_actions, 0.0);
    }
    for (int x = 0; x < nx; ++x) {
      for (int a = 0; a < num_actions; ++a) {
        Vec raw(nx, 0.0);
        double total = 0.0;
        for (int y = 0; y < nx; ++y) {
          raw[y] = 0.1 + rng.next_double();
          total += raw[y];
        }
        const double mass = own1 ? s1[x] : 1.0 - s1[x];
        for (int y = 0; y < nx; ++y) q[y][x][a] = raw[y] * (mass / total);
      }
    }
  };
  draw_component(g.q1, num_actions1, true);
  draw_component(g.q2, num_actions2, false);

  auto draw_table2 = [&](Table2& t, int num_actions) {
    t.assign(nx, Vec(num_actions, 0.0));
    for (int x = 0; x < nx; ++x) {
      for (int a = 0; a < num_actions; ++a) t[x][a] = -1.0 + 2.0 * rng.next_double();
    }
  };
  draw_table2(g.reward1_own, num_actions1);
  draw_table2(g.reward1_opp, num_actions2);
  draw_table2(g.reward2_own, num_actions2);
  draw_table2(g.reward2_opp, num_actions1);

  auto draw_table3 = [&](Table3& t, int num_actions) {
    t.assign(nx, Table2(num_actions, Vec(p, 0.0)));
    for (int x = 0; x < nx; ++x) {
      for (int a = 0; a < num_actions; ++a) {
        for (int k = 0; k < p; ++k) t[x][a][k] = -1.0 + 2.0 * rng.next_double();
      }
    }
  };
  draw_table3(g.constraint1_own, num_actions1);
  draw_table3(g.constraint1_opp, num_actions2);
  draw_table3(g.constraint2_own, num_actions2);
  draw_table3(g.constraint2_opp, num_actions1);

  // Uniform simplex point via exponential spacings.
  g.eta.assign(nx, 0.0);
  double eta_total = 0.0;
  for (int x = 0; x < nx; ++x) {
    g.eta[x] = -std::log1p(-rng.next_double());
    eta_total += g.eta[x];
  }
  for (int x = 0; x < nx; ++x) g.eta[x] /= eta_total;

  // Levels sit 0.05 below the uniform profile's constraint values, so the
  // uniform profile is always strictly feasible.
  g.rho1.assign(p, 0.0);
  g.rho2.assign(p, 0.0);
  if (p > 0) {
    const OccupationMeasure mu = occupation_measure(g, uniform_policy(g, 1), uniform_policy(g, 2));
    const Vec c1 = constraint_value(g, mu, 1);
    const Vec c2 = constraint_value(g, mu, 2);
    for (int k = 0; k < p; ++k) {
      g.rho1[k] = c1[k] - 0.05;
      g.rho2[k] = c2[k] - 0.05;
    }
  }
  return g;
}

}  // namespace arat

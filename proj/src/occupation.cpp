#include "arat/occupation.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace arat {

StationaryPolicy uniform_policy(const GameInstance& g, int player) {
  if (player != 1 && player != 2) throw std::invalid_argument("uniform_policy: player must be 1 or 2");
  StationaryPolicy pi;
  pi.player = player;
  const int nx = g.num_states();
  pi.prob.resize(nx);
  for (int x = 0; x < nx; ++x) {
    const int na = player == 1 ? g.num_actions1(x) : g.num_actions2(x);
    pi.prob[x].assign(na, na > 0 ? 1.0 / na : 0.0);
  }
  return pi;
}

void check_policy_shape(const GameInstance& g, const StationaryPolicy& pi, int player) {
  if (pi.player != player) throw std::invalid_argument("policy tagged for the wrong player");
  const int nx = g.num_states();
  if (static_cast<int>(pi.prob.size()) != nx) throw std::invalid_argument("policy state count mismatch");
  for (int x = 0; x < nx; ++x) {
    const int na = player == 1 ? g.num_actions1(x) : g.num_actions2(x);
    if (static_cast<int>(pi.prob[x].size()) != na) {
      throw std::invalid_argument("policy action count mismatch at state " + std::to_string(x));
    }
  }
}

MarginalMeasure make_marginal(const GameInstance& g, int player, Table2 table) {
  MarginalMeasure m;
  m.player = player;
  m.table = std::move(table);
  m.x_marginal.assign(g.num_states(), 0.0);
  for (int x = 0; x < g.num_states(); ++x) {
    for (double v : m.table[x]) m.x_marginal[x] += v;
  }
  return m;
}

Matrix kernel_under_profile(const GameInstance& g, const StationaryPolicy& pi1,
                            const StationaryPolicy& pi2) {
  check_policy_shape(g, pi1, 1);
  check_policy_shape(g, pi2, 2);
  const int nx = g.num_states();
  Matrix pk(nx, nx, 0.0);
  for (int x = 0; x < nx; ++x) {
    for (int y = 0; y < nx; ++y) {
      double v = 0.0;
      for (int a = 0; a < g.num_actions1(x); ++a) v += pi1.prob[x][a] * g.q1[y][x][a];
      for (int a = 0; a < g.num_actions2(x); ++a) v += pi2.prob[x][a] * g.q2[y][x][a];
      pk(x, y) = v;
    }
  }
  return pk;
}

Vec occupation_x_marginal(const GameInstance& g, const StationaryPolicy& pi1,
                          const StationaryPolicy& pi2) {
  const Matrix pk = kernel_under_profile(g, pi1, pi2);
  const int nx = g.num_states();
  Matrix m(nx, nx, 0.0);
  for (int y = 0; y < nx; ++y) {
    for (int x = 0; x < nx; ++x) m(y, x) = (y == x ? 1.0 : 0.0) - g.beta * pk(x, y);
  }
  Vec b(nx, 0.0);
  for (int x = 0; x < nx; ++x) b[x] = (1.0 - g.beta) * g.eta[x];
  Vec mu;
  try {
    mu = solve_linear(m, b);
  } catch (const SingularMatrixError& e) {
    // I - beta P' is strictly diagonally dominant for beta < 1, so this
    // indicates a broken instance or solver, not a legitimate outcome.
    throw std::runtime_error(std::string("occupation_x_marginal: ") + e.what());
  }
  // mu = (1-beta) eta + beta P' mu  >=  (1-beta) eta holds exactly in real
  // arithmetic; enforce it against elimination rounding.
  for (int x = 0; x < nx; ++x) mu[x] = std::max(mu[x], b[x]);
  return mu;
}

OccupationMeasure occupation_measure(const GameInstance& g, const StationaryPolicy& pi1,
                                     const StationaryPolicy& pi2) {
  OccupationMeasure mu;
  mu.x_marginal = occupation_x_marginal(g, pi1, pi2);
  const int nx = g.num_states();
  mu.joint.resize(nx);
  mu.marginal1.resize(nx);
  mu.marginal2.resize(nx);
  for (int x = 0; x < nx; ++x) {
    const int na1 = g.num_actions1(x);
    const int na2 = g.num_actions2(x);
    mu.joint[x].assign(na1, Vec(na2, 0.0));
    mu.marginal1[x].assign(na1, 0.0);
    mu.marginal2[x].assign(na2, 0.0);
    for (int a1 = 0; a1 < na1; ++a1) {
      mu.marginal1[x][a1] = mu.x_marginal[x] * pi1.prob[x][a1];
      for (int a2 = 0; a2 < na2; ++a2) {
        mu.joint[x][a1][a2] = mu.x_marginal[x] * pi1.prob[x][a1] * pi2.prob[x][a2];
      }
    }
    for (int a2 = 0; a2 < na2; ++a2) mu.marginal2[x][a2] = mu.x_marginal[x] * pi2.prob[x][a2];
  }
  return mu;
}

double payoff(const GameInstance& g, const OccupationMeasure& mu, int player) {
  if (player != 1 && player != 2) throw std::invalid_argument("payoff: player must be 1 or 2");
  const Table2& own = player == 1 ? g.reward1_own : g.reward2_own;
  const Table2& opp = player == 1 ? g.reward1_opp : g.reward2_opp;
  const Table2& own_marg = player == 1 ? mu.marginal1 : mu.marginal2;
  const Table2& opp_marg = player == 1 ? mu.marginal2 : mu.marginal1;
  double r = 0.0;
  for (int x = 0; x < g.num_states(); ++x) {
    for (std::size_t a = 0; a < own[x].size(); ++a) r += own[x][a] * own_marg[x][a];
    for (std::size_t a = 0; a < opp[x].size(); ++a) r += opp[x][a] * opp_marg[x][a];
  }
  return r;
}

Vec constraint_value(const GameInstance& g, const OccupationMeasure& mu, int player) {
  if (player != 1 && player != 2) throw std::invalid_argument("constraint_value: player must be 1 or 2");
  const Table3& own = player == 1 ? g.constraint1_own : g.constraint2_own;
  const Table3& opp = player == 1 ? g.constraint1_opp : g.constraint2_opp;
  const Table2& own_marg = player == 1 ? mu.marginal1 : mu.marginal2;
  const Table2& opp_marg = player == 1 ? mu.marginal2 : mu.marginal1;
  Vec c(g.p, 0.0);
  for (int x = 0; x < g.num_states(); ++x) {
    for (std::size_t a = 0; a < own[x].size(); ++a) {
      for (int k = 0; k < g.p; ++k) c[k] += own[x][a][k] * own_marg[x][a];
    }
    for (std::size_t a = 0; a < opp[x].size(); ++a) {
      for (int k = 0; k < g.p; ++k) c[k] += opp[x][a][k] * opp_marg[x][a];
    }
  }
  return c;
}

StationaryPolicy disintegrate(const GameInstance& g, const MarginalMeasure& gamma) {
  StationaryPolicy pi;
  pi.player = gamma.player;
  const int nx = g.num_states();
  pi.prob.resize(nx);
  for (int x = 0; x < nx; ++x) {
    const int na = gamma.player == 1 ? g.num_actions1(x) : g.num_actions2(x);
    pi.prob[x].assign(na, 0.0);
    if (gamma.x_marginal[x] > 1e-12) {
      for (int a = 0; a < na; ++a) pi.prob[x][a] = gamma.table[x][a] / gamma.x_marginal[x];
    } else if (na > 0) {
      // Unreached states carry no information; any row works, the uniform
      // one is the canonical choice.
      for (int a = 0; a < na; ++a) pi.prob[x][a] = 1.0 / na;
    }
  }
  return pi;
}

OccupationMeasure truncated_series_oracle(const GameInstance& g, const StationaryPolicy& pi1,
                                          const StationaryPolicy& pi2, int horizon) {
  if (horizon < 0) throw std::invalid_argument("truncated_series_oracle: horizon must be >= 0");
  const Matrix pk = kernel_under_profile(g, pi1, pi2);
  const int nx = g.num_states();

  OccupationMeasure mu;
  mu.x_marginal.assign(nx, 0.0);
  mu.joint.resize(nx);
  mu.marginal1.resize(nx);
  mu.marginal2.resize(nx);
  for (int x = 0; x < nx; ++x) {
    mu.joint[x].assign(g.num_actions1(x), Vec(g.num_actions2(x), 0.0));
    mu.marginal1[x].assign(g.num_actions1(x), 0.0);
    mu.marginal2[x].assign(g.num_actions2(x), 0.0);
  }

  Vec d = g.eta;
  double w = 1.0 - g.beta;
  for (int t = 0; t <= horizon; ++t) {
    for (int x = 0; x < nx; ++x) {
      const double wx = w * d[x];
      if (wx == 0.0) continue;
      mu.x_marginal[x] += wx;
      for (int a1 = 0; a1 < g.num_actions1(x); ++a1) {
        const double w1 = wx * pi1.prob[x][a1];
        mu.marginal1[x][a1] += w1;
        for (int a2 = 0; a2 < g.num_actions2(x); ++a2) {
          mu.joint[x][a1][a2] += w1 * pi2.prob[x][a2];
        }
      }
      for (int a2 = 0; a2 < g.num_actions2(x); ++a2) {
        mu.marginal2[x][a2] += wx * pi2.prob[x][a2];
      }
    }
    if (t == horizon) break;
    Vec next(nx, 0.0);
    for (int x = 0; x < nx; ++x) {
      if (d[x] == 0.0) continue;
      for (int y = 0; y < nx; ++y) next[y] += d[x] * pk(x, y);
    }
    d = std::move(next);
    w *= g.beta;
  }
  return mu;
}

}  // namespace arat

#include "arat/best_response.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace arat {
namespace {

const double kInf = std::numeric_limits<double>::infinity();

int own_actions(const GameInstance& g, int player, int x) {
  return player == 1 ? g.num_actions1(x) : g.num_actions2(x);
}

}  // namespace

BestResponseProblem build_br_problem(const GameInstance& g, int player,
                                     const StationaryPolicy& opponent) {
  if (player != 1 && player != 2) throw std::invalid_argument("build_br_problem: player must be 1 or 2");
  check_policy_shape(g, opponent, player == 1 ? 2 : 1);

  const int nx = g.num_states();
  BestResponseProblem bp;
  bp.player = player;
  bp.opponent = opponent;
  bp.levels = player == 1 ? g.rho1 : g.rho2;

  const Table3& q_own = player == 1 ? g.q1 : g.q2;
  const Table3& q_opp = player == 1 ? g.q2 : g.q1;
  const Table2& r_own = player == 1 ? g.reward1_own : g.reward2_own;
  const Table2& r_opp = player == 1 ? g.reward1_opp : g.reward2_opp;
  const Table3& c_own = player == 1 ? g.constraint1_own : g.constraint2_own;
  const Table3& c_opp = player == 1 ? g.constraint1_opp : g.constraint2_opp;

  // Average the opponent out of the additive components once per state.
  Table2 qbar(nx, Vec(nx, 0.0));  // [x][y]
  Vec rbar(nx, 0.0);
  Table2 cbar(nx, Vec(g.p, 0.0));
  for (int x = 0; x < nx; ++x) {
    const int nb = static_cast<int>(opponent.prob[x].size());
    for (int b = 0; b < nb; ++b) {
      const double w = opponent.prob[x][b];
      if (w == 0.0) continue;
      for (int y = 0; y < nx; ++y) qbar[x][y] += w * q_opp[y][x][b];
      rbar[x] += w * r_opp[x][b];
      for (int k = 0; k < g.p; ++k) cbar[x][k] += w * c_opp[x][b][k];
    }
  }

  bp.induced_kernel.resize(nx);
  bp.objective.resize(nx);
  bp.constraint.assign(g.p, Table2(nx));
  bp.var_offset.assign(nx, 0);
  int total = 0;
  for (int x = 0; x < nx; ++x) {
    const int na = own_actions(g, player, x);
    bp.var_offset[x] = total;
    total += na;
    bp.induced_kernel[x].assign(na, Vec(nx, 0.0));
    bp.objective[x].assign(na, 0.0);
    for (int k = 0; k < g.p; ++k) bp.constraint[k][x].assign(na, 0.0);
    for (int a = 0; a < na; ++a) {
      for (int y = 0; y < nx; ++y) bp.induced_kernel[x][a][y] = q_own[y][x][a] + qbar[x][y];
      bp.objective[x][a] = r_own[x][a] + rbar[x];
      for (int k = 0; k < g.p; ++k) bp.constraint[k][x][a] = c_own[x][a][k] + cbar[x][k];
    }
  }
  bp.num_vars = total;
  return bp;
}

LpProblem build_feasible_lp(const GameInstance& g, int player, const StationaryPolicy& opponent) {
  const BestResponseProblem bp = build_br_problem(g, player, opponent);
  const int nx = g.num_states();
  const int n = bp.num_vars;

  LpProblem lp;
  lp.objective.assign(n, 0.0);
  for (int x = 0; x < nx; ++x) {
    for (int a = 0; a < own_actions(g, player, x); ++a) {
      lp.objective[bp.var_offset[x] + a] = bp.objective[x][a];
    }
  }

  // Total mass, redundant given the flow rows but kept for conditioning.
  lp.eq_rows.emplace_back(n, 1.0);
  lp.eq_rhs.push_back(1.0);

  // Flow rows: gamma's state marginal must reproduce the discounted law.
  for (int y = 0; y < nx; ++y) {
    Vec row(n, 0.0);
    for (int a = 0; a < own_actions(g, player, y); ++a) row[bp.var_offset[y] + a] += 1.0;
    for (int x = 0; x < nx; ++x) {
      for (int a = 0; a < own_actions(g, player, x); ++a) {
        row[bp.var_offset[x] + a] -= g.beta * bp.induced_kernel[x][a][y];
      }
    }
    lp.eq_rows.push_back(std::move(row));
    lp.eq_rhs.push_back((1.0 - g.beta) * g.eta[y]);
  }

  for (int k = 0; k < g.p; ++k) {
    Vec row(n, 0.0);
    for (int x = 0; x < nx; ++x) {
      for (int a = 0; a < own_actions(g, player, x); ++a) {
        row[bp.var_offset[x] + a] = bp.constraint[k][x][a];
      }
    }
    lp.ge_rows.push_back(std::move(row));
    lp.ge_rhs.push_back(bp.levels[k]);
  }
  return lp;
}

namespace {

MarginalMeasure marginal_from_point(const GameInstance& g, const BestResponseProblem& bp,
                                    const Vec& x) {
  Table2 table(g.num_states());
  for (int s = 0; s < g.num_states(); ++s) {
    const int na = own_actions(g, bp.player, s);
    table[s].assign(na, 0.0);
    for (int a = 0; a < na; ++a) table[s][a] = std::max(0.0, x[bp.var_offset[s] + a]);
  }
  return make_marginal(g, bp.player, std::move(table));
}

Vec constraints_of_marginal(const GameInstance& g, const BestResponseProblem& bp,
                            const MarginalMeasure& gamma) {
  Vec c(g.p, 0.0);
  for (int k = 0; k < g.p; ++k) {
    for (int x = 0; x < g.num_states(); ++x) {
      for (int a = 0; a < own_actions(g, bp.player, x); ++a) {
        c[k] += bp.constraint[k][x][a] * gamma.table[x][a];
      }
    }
  }
  return c;
}

}  // namespace

BestResponseResult constrained_best_response(const GameInstance& g, int player,
                                             const StationaryPolicy& opponent) {
  const BestResponseProblem bp = build_br_problem(g, player, opponent);
  const LpProblem lp = build_feasible_lp(g, player, opponent);
  const LpSolution s = lp_solve(lp);

  BestResponseResult res;
  if (s.status == LpStatus::Infeasible) return res;
  if (s.status == LpStatus::Unbounded) {
    // The feasible set lives inside the probability simplex, so this
    // cannot legitimately happen.
    throw std::logic_error("constrained_best_response: unbounded feasible LP");
  }
  res.optimal = true;
  res.marginal = marginal_from_point(g, bp, s.x);
  res.policy = disintegrate(g, res.marginal);
  res.value = s.objective;
  res.constraint_values = constraints_of_marginal(g, bp, res.marginal);
  return res;
}

SlaterResult slater_margin(const GameInstance& g, int player, const StationaryPolicy& opponent) {
  SlaterResult out;
  if (g.p == 0) {
    // Nothing to satisfy; any policy works, so report an infinite margin
    // with the uniform policy's marginal as witness.
    const OccupationMeasure mu = player == 1
                                     ? occupation_measure(g, uniform_policy(g, 1), opponent)
                                     : occupation_measure(g, opponent, uniform_policy(g, 2));
    out.margin = kInf;
    out.witness = make_marginal(g, player, player == 1 ? mu.marginal1 : mu.marginal2);
    return out;
  }

  const BestResponseProblem bp = build_br_problem(g, player, opponent);
  LpProblem lp = build_feasible_lp(g, player, opponent);
  const int n = bp.num_vars;

  // One extra free variable t, maximized subject to C_k(gamma) - t >= rho_k.
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = 1.0;
  for (Vec& row : lp.eq_rows) row.push_back(0.0);
  for (Vec& row : lp.ge_rows) row.push_back(-1.0);
  lp.lower.assign(n + 1, 0.0);
  lp.lower[n] = -kInf;

  const LpSolution s = lp_solve(lp);
  if (s.status != LpStatus::Optimal) {
    // The equality system is satisfiable for every valid instance (any
    // policy's occupation marginal solves it) and t is bounded above.
    throw std::logic_error("slater_margin: margin LP failed to solve");
  }
  out.margin = s.x[n];
  Vec gamma(s.x.begin(), s.x.begin() + n);
  out.witness = marginal_from_point(g, bp, gamma);
  return out;
}

}  // namespace arat

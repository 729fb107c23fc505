#include "arat/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace arat {
namespace {

const double kInf = std::numeric_limits<double>::infinity();

void check_config(const IterationConfig& c) {
  if (c.max_iterations < 0) throw std::invalid_argument("iterate: max_iterations must be >= 0");
  if (!(c.damping > 0.0 && c.damping <= 1.0)) throw std::invalid_argument("iterate: damping must lie in (0,1]");
  if (!(c.tolerance > 0.0)) throw std::invalid_argument("iterate: tolerance must be positive");
  if (!(c.epsilon > 0.0)) throw std::invalid_argument("iterate: epsilon must be positive");
}

double feasibility_slack(const GameInstance& g, const Vec& c, const Vec& rho) {
  if (g.p == 0) return kInf;
  double slack = kInf;
  for (int k = 0; k < g.p; ++k) slack = std::min(slack, c[k] - rho[k]);
  return slack;
}

}  // namespace

NashVerification verify_epsilon_nash(const GameInstance& g, const StationaryPolicy& pi1,
                                     const StationaryPolicy& pi2, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("verify_epsilon_nash: epsilon must be positive");
  check_policy_shape(g, pi1, 1);
  check_policy_shape(g, pi2, 2);

  NashVerification v;
  v.epsilon = epsilon;
  const OccupationMeasure mu = occupation_measure(g, pi1, pi2);
  v.payoffs = {payoff(g, mu, 1), payoff(g, mu, 2)};
  v.constraints = {constraint_value(g, mu, 1), constraint_value(g, mu, 2)};
  v.feasibility_slack = {feasibility_slack(g, v.constraints[0], g.rho1),
                         feasibility_slack(g, v.constraints[1], g.rho2)};

  for (int i = 0; i < 2; ++i) {
    v.feasibility_ok[i] = v.feasibility_slack[i] >= -epsilon;
    const BestResponseResult br =
        constrained_best_response(g, i + 1, i == 0 ? pi2 : pi1);
    if (br.optimal) {
      v.regret[i] = br.value - v.payoffs[i];
    } else {
      // No feasible deviation exists, so none can improve the payoff.
      v.deviation_infeasible[i] = true;
      v.regret[i] = 0.0;
    }
    v.regret_ok[i] = v.regret[i] <= epsilon;
  }
  v.passed = v.feasibility_ok[0] && v.feasibility_ok[1] && v.regret_ok[0] && v.regret_ok[1];
  return v;
}

double nash_defect(const NashVerification& v) {
  double d = 0.0;
  for (int i = 0; i < 2; ++i) {
    if (std::isfinite(v.feasibility_slack[i])) d = std::max(d, -v.feasibility_slack[i]);
    d = std::max(d, v.regret[i]);
  }
  return std::max(d, 0.0);
}

MarginalMeasure mix_restore_feasibility(const MarginalMeasure& target,
                                        const MarginalMeasure& slater, double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) {
    throw std::invalid_argument("mix_restore_feasibility: eps must lie in (0,1]");
  }
  if (target.player != slater.player || target.table.size() != slater.table.size()) {
    throw std::invalid_argument("mix_restore_feasibility: mismatched marginals");
  }
  const double w = std::sqrt(eps);
  MarginalMeasure out;
  out.player = target.player;
  out.table.resize(target.table.size());
  out.x_marginal.assign(target.x_marginal.size(), 0.0);
  for (std::size_t x = 0; x < target.table.size(); ++x) {
    if (target.table[x].size() != slater.table[x].size()) {
      throw std::invalid_argument("mix_restore_feasibility: mismatched marginals");
    }
    out.table[x].assign(target.table[x].size(), 0.0);
    for (std::size_t a = 0; a < target.table[x].size(); ++a) {
      out.table[x][a] = (1.0 - w) * target.table[x][a] + w * slater.table[x][a];
      out.x_marginal[x] += out.table[x][a];
    }
  }
  return out;
}

EquilibriumReport iterate(const GameInstance& g, const IterationConfig& config) {
  check_config(config);

  EquilibriumReport rep;
  rep.pi1 = uniform_policy(g, 1);
  rep.pi2 = uniform_policy(g, 2);

  auto record_margins = [&](const StationaryPolicy& p1, const StationaryPolicy& p2) {
    const double m1 = slater_margin(g, 1, p2).margin;
    const double m2 = slater_margin(g, 2, p1).margin;
    rep.slater_margins.push_back({m1, m2});
    if (m1 <= 0.0 || m2 <= 0.0) rep.slater_failure = true;
  };
  record_margins(rep.pi1, rep.pi2);

  // One damped step of player i toward its best response; on an infeasible
  // response the current marginal is pulled toward a strictly feasible
  // witness instead, when one exists.
  auto respond = [&](int player, const StationaryPolicy& opponent,
                     bool& failed) -> StationaryPolicy {
    const BestResponseResult br = constrained_best_response(g, player, opponent);
    if (br.optimal) return br.policy;

    const SlaterResult sl = slater_margin(g, player, opponent);
    if (!(sl.margin > 0.0)) {
      failed = true;
      rep.failure_note = "player " + std::to_string(player) +
                         " has no feasible response (margin " + std::to_string(sl.margin) + ")";
      return player == 1 ? rep.pi1 : rep.pi2;
    }
    const OccupationMeasure mu = occupation_measure(g, rep.pi1, rep.pi2);
    const MarginalMeasure current =
        make_marginal(g, player, player == 1 ? mu.marginal1 : mu.marginal2);
    const Vec c = constraint_value(g, mu, player);
    const Vec& rho = player == 1 ? g.rho1 : g.rho2;
    double violation = 0.0;
    for (int k = 0; k < g.p; ++k) violation = std::max(violation, rho[k] - c[k]);
    const double eps = std::clamp(violation, 1e-12, 1.0);
    rep.feasibility_restoration_used = true;
    return disintegrate(g, mix_restore_feasibility(current, sl.witness, eps));
  };

  for (int it = 1; it <= config.max_iterations; ++it) {
    bool failed = false;
    const StationaryPolicy new1 = respond(1, rep.pi2, failed);
    const StationaryPolicy new2 = respond(2, rep.pi1, failed);
    rep.iterations = it;
    if (failed) break;

    double change = 0.0;
    const double alpha = config.damping;
    for (std::size_t x = 0; x < rep.pi1.prob.size(); ++x) {
      for (std::size_t a = 0; a < rep.pi1.prob[x].size(); ++a) {
        const double next = (1.0 - alpha) * rep.pi1.prob[x][a] + alpha * new1.prob[x][a];
        change = std::max(change, std::fabs(next - rep.pi1.prob[x][a]));
        rep.pi1.prob[x][a] = next;
      }
      for (std::size_t a = 0; a < rep.pi2.prob[x].size(); ++a) {
        const double next = (1.0 - alpha) * rep.pi2.prob[x][a] + alpha * new2.prob[x][a];
        change = std::max(change, std::fabs(next - rep.pi2.prob[x][a]));
        rep.pi2.prob[x][a] = next;
      }
    }
    rep.policy_change_trace.push_back(change);
    record_margins(rep.pi1, rep.pi2);

    if (change <= config.tolerance) {
      rep.converged = true;
      break;
    }
  }

  rep.verification = verify_epsilon_nash(g, rep.pi1, rep.pi2, config.epsilon);
  return rep;
}

PerturbedSequenceResult perturbed_sequence(const GameInstance& g, int n_max,
                                           const IterationConfig& config) {
  if (n_max < 0) throw std::invalid_argument("perturbed_sequence: n_max must be >= 0");
  check_config(config);

  PerturbedSequenceResult out;

  // Exchanging eta for any other initial distribution moves each
  // constraint value by at most twice the largest total constraint
  // component; twice the largest component magnitude bounds that.
  double cmax = 0.0;
  auto scan = [&](const Table3& t) {
    for (const auto& sx : t) {
      for (const auto& sa : sx) {
        for (double v : sa) cmax = std::max(cmax, std::fabs(v));
      }
    }
  };
  scan(g.constraint1_own);
  scan(g.constraint1_opp);
  scan(g.constraint2_own);
  scan(g.constraint2_opp);
  out.level_shift_scale = 2.0 * cmax;

  const int nx = g.num_states();
  for (int n = 0; n <= n_max; ++n) {
    GameInstance gn = g;
    const double wn = 1.0 / (n + 1);
    for (int x = 0; x < nx; ++x) gn.eta[x] = (1.0 - wn) * g.eta[x] + wn / nx;
    for (int k = 0; k < g.p; ++k) {
      gn.rho1[k] = g.rho1[k] - out.level_shift_scale * wn;
      gn.rho2[k] = g.rho2[k] - out.level_shift_scale * wn;
    }
    EquilibriumReport rep = iterate(gn, config);
    out.steps.push_back({std::move(gn), std::move(rep)});
  }

  const EquilibriumReport& last = out.steps.back().report;
  out.final_on_original = verify_epsilon_nash(g, last.pi1, last.pi2, config.epsilon);
  return out;
}

}  // namespace arat

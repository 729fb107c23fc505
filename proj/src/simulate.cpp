#include "arat/simulate.hpp"

#include <cmath>
#include <stdexcept>

#include "arat/rng.hpp"

namespace arat {
namespace {

int sample_index(const Vec& weights, double total, double u) {
  // Inverse-CDF walk; the final bucket absorbs any rounding residue.
  double acc = 0.0;
  const int n = static_cast<int>(weights.size());
  const double target = u * total;
  for (int i = 0; i < n; ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  return n - 1;
}

int sample_next_state(const GameInstance& g, SplitMix64& rng, int x, int a1, int a2) {
  const int nx = g.num_states();
  const double u = rng.next_double();
  double acc = 0.0;
  for (int y = 0; y < nx; ++y) {
    acc += g.q1[y][x][a1] + g.q2[y][x][a2];
    if (u < acc) return y;
  }
  return nx - 1;
}

}  // namespace

EpisodeSample simulate_episode(const GameInstance& g, const StationaryPolicy& pi1,
                               const StationaryPolicy& pi2, int horizon, std::uint64_t seed,
                               std::uint64_t episode) {
  SplitMix64 rng(episode_stream_seed(seed, episode));
  const int nx = g.num_states();

  EpisodeSample ep;
  ep.occupation.resize(nx);
  for (int x = 0; x < nx; ++x) {
    ep.occupation[x].assign(g.num_actions1(x), Vec(g.num_actions2(x), 0.0));
  }
  ep.constraint = {Vec(g.p, 0.0), Vec(g.p, 0.0)};

  int x = sample_index(g.eta, 1.0, rng.next_double());
  double w = 1.0 - g.beta;
  for (int t = 0; t <= horizon; ++t) {
    const int a1 = sample_index(pi1.prob[x], 1.0, rng.next_double());
    const int a2 = sample_index(pi2.prob[x], 1.0, rng.next_double());
    ep.occupation[x][a1][a2] += w;
    ep.payoff[0] += w * (g.reward1_own[x][a1] + g.reward1_opp[x][a2]);
    ep.payoff[1] += w * (g.reward2_opp[x][a1] + g.reward2_own[x][a2]);
    for (int k = 0; k < g.p; ++k) {
      ep.constraint[0][k] += w * (g.constraint1_own[x][a1][k] + g.constraint1_opp[x][a2][k]);
      ep.constraint[1][k] += w * (g.constraint2_opp[x][a1][k] + g.constraint2_own[x][a2][k]);
    }
    if (t == horizon) break;
    x = sample_next_state(g, rng, x, a1, a2);
    w *= g.beta;
  }
  return ep;
}

SimulationEstimate simulate(const GameInstance& g, const StationaryPolicy& pi1,
                            const StationaryPolicy& pi2, const SimulationConfig& config) {
  if (config.horizon < 1) throw std::invalid_argument("simulate: horizon must be >= 1");
  if (config.episodes < 1) throw std::invalid_argument("simulate: episodes must be >= 1");
  check_policy_shape(g, pi1, 1);
  check_policy_shape(g, pi2, 2);

  const int nx = g.num_states();
  const long m = config.episodes;

  SimulationEstimate est;
  est.occupation.resize(nx);
  for (int x = 0; x < nx; ++x) {
    est.occupation[x].assign(g.num_actions1(x), Vec(g.num_actions2(x), 0.0));
  }
  est.constraint = {Vec(g.p, 0.0), Vec(g.p, 0.0)};
  est.constraint_se = {Vec(g.p, 0.0), Vec(g.p, 0.0)};

  std::array<double, 2> pay_sum{}, pay_sq{};
  std::array<Vec, 2> con_sum = {Vec(g.p, 0.0), Vec(g.p, 0.0)};
  std::array<Vec, 2> con_sq = {Vec(g.p, 0.0), Vec(g.p, 0.0)};

  // Fixed-order reduction over episode index; each episode's draws come
  // from its own substream, so the sum is independent of evaluation order.
  for (long e = 0; e < m; ++e) {
    const EpisodeSample ep =
        simulate_episode(g, pi1, pi2, config.horizon, config.seed, static_cast<std::uint64_t>(e));
    for (int x = 0; x < nx; ++x) {
      for (int a1 = 0; a1 < g.num_actions1(x); ++a1) {
        for (int a2 = 0; a2 < g.num_actions2(x); ++a2) {
          est.occupation[x][a1][a2] += ep.occupation[x][a1][a2];
        }
      }
    }
    for (int i = 0; i < 2; ++i) {
      pay_sum[i] += ep.payoff[i];
      pay_sq[i] += ep.payoff[i] * ep.payoff[i];
      for (int k = 0; k < g.p; ++k) {
        con_sum[i][k] += ep.constraint[i][k];
        con_sq[i][k] += ep.constraint[i][k] * ep.constraint[i][k];
      }
    }
  }

  const double dm = static_cast<double>(m);
  for (int x = 0; x < nx; ++x) {
    for (auto& row : est.occupation[x]) {
      for (double& v : row) v /= dm;
    }
  }
  auto stderr_of = [&](double sum, double sq) {
    if (m < 2) return 0.0;
    const double mean = sum / dm;
    const double var = std::max(0.0, (sq - dm * mean * mean) / (dm - 1.0));
    return std::sqrt(var / dm);
  };
  for (int i = 0; i < 2; ++i) {
    est.payoff[i] = pay_sum[i] / dm;
    est.payoff_se[i] = stderr_of(pay_sum[i], pay_sq[i]);
    for (int k = 0; k < g.p; ++k) {
      est.constraint[i][k] = con_sum[i][k] / dm;
      est.constraint_se[i][k] = stderr_of(con_sum[i][k], con_sq[i][k]);
    }
  }
  return est;
}

}  // namespace arat

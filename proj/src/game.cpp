#include "arat/game.hpp"

#include <cmath>
#include <cstddef>

namespace arat {
namespace {

constexpr double kTol = 1e-12;

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument("validate: " + msg);
}

// Container coherence is a precondition, not an invariant the report
// covers: a structurally broken instance cannot be indexed meaningfully.
void check_shapes(const GameInstance& g) {
  const std::size_t nx = g.states.size();
  require(nx >= 1, "no states");
  require(g.actions1.size() == nx && g.actions2.size() == nx, "action sets must cover every state");
  require(g.eta.size() == nx, "eta length mismatch");
  require(g.p >= 0, "negative constraint dimension");
  const std::size_t p = static_cast<std::size_t>(g.p);
  require(g.rho1.size() == p && g.rho2.size() == p, "rho length mismatch");

  auto check2 = [&](const Table2& t, bool own1, const char* name) {
    require(t.size() == nx, std::string(name) + " state count mismatch");
    for (std::size_t x = 0; x < nx; ++x) {
      const std::size_t na = own1 ? g.actions1[x].size() : g.actions2[x].size();
      require(t[x].size() == na, std::string(name) + " action count mismatch");
    }
  };
  auto check3 = [&](const Table3& t, bool own1, const char* name) {
    require(t.size() == nx, std::string(name) + " state count mismatch");
    for (std::size_t x = 0; x < nx; ++x) {
      const std::size_t na = own1 ? g.actions1[x].size() : g.actions2[x].size();
      require(t[x].size() == na, std::string(name) + " action count mismatch");
      for (const auto& row : t[x]) require(row.size() == p, std::string(name) + " component count mismatch");
    }
  };
  auto checkq = [&](const Table3& q, bool own1, const char* name) {
    require(q.size() == nx, std::string(name) + " next-state count mismatch");
    for (std::size_t y = 0; y < nx; ++y) {
      require(q[y].size() == nx, std::string(name) + " state count mismatch");
      for (std::size_t x = 0; x < nx; ++x) {
        const std::size_t na = own1 ? g.actions1[x].size() : g.actions2[x].size();
        require(q[y][x].size() == na, std::string(name) + " action count mismatch");
      }
    }
  };

  check2(g.reward1_own, true, "reward1_own");
  check2(g.reward1_opp, false, "reward1_opp");
  check2(g.reward2_own, false, "reward2_own");
  check2(g.reward2_opp, true, "reward2_opp");
  check3(g.constraint1_own, true, "constraint1_own");
  check3(g.constraint1_opp, false, "constraint1_opp");
  check3(g.constraint2_own, false, "constraint2_own");
  check3(g.constraint2_opp, true, "constraint2_opp");
  checkq(g.q1, true, "q1");
  checkq(g.q2, false, "q2");
}

}  // namespace

const char* violation_code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::StochasticityViolation: return "StochasticityViolation";
    case ViolationCode::ARATInconsistency: return "ARATInconsistency";
    case ViolationCode::EmptyActionSet: return "EmptyActionSet";
    case ViolationCode::BadDiscount: return "BadDiscount";
    case ViolationCode::BadInitialDistribution: return "BadInitialDistribution";
    case ViolationCode::NegativeDensity: return "NegativeDensity";
  }
  return "?";
}

ValidationReport validate(const GameInstance& g) {
  check_shapes(g);
  ValidationReport rep;
  auto flag = [&](ViolationCode code, std::vector<int> idx, double residual) {
    rep.violations.push_back({code, std::move(idx), residual});
  };

  const int nx = g.num_states();

  for (int x = 0; x < nx; ++x) {
    if (g.actions1[x].empty()) flag(ViolationCode::EmptyActionSet, {1, x}, 0.0);
    if (g.actions2[x].empty()) flag(ViolationCode::EmptyActionSet, {2, x}, 0.0);
  }

  if (!(g.beta > 0.0) || !(g.beta < 1.0) || !std::isfinite(g.beta)) {
    flag(ViolationCode::BadDiscount, {}, g.beta);
  }

  double eta_sum = 0.0;
  for (int x = 0; x < nx; ++x) {
    if (g.eta[x] < 0.0) flag(ViolationCode::BadInitialDistribution, {x}, -g.eta[x]);
    eta_sum += g.eta[x];
  }
  if (std::fabs(eta_sum - 1.0) > kTol) {
    flag(ViolationCode::BadInitialDistribution, {}, std::fabs(eta_sum - 1.0));
  }

  for (int y = 0; y < nx; ++y) {
    for (int x = 0; x < nx; ++x) {
      for (int a = 0; a < g.num_actions1(x); ++a) {
        if (g.q1[y][x][a] < 0.0) flag(ViolationCode::NegativeDensity, {1, y, x, a}, -g.q1[y][x][a]);
      }
      for (int a = 0; a < g.num_actions2(x); ++a) {
        if (g.q2[y][x][a] < 0.0) flag(ViolationCode::NegativeDensity, {2, y, x, a}, -g.q2[y][x][a]);
      }
    }
  }

  // Component masses: s_i must not depend on the action, and the pair must
  // tile a probability.
  for (int x = 0; x < nx; ++x) {
    const int na1 = g.num_actions1(x);
    const int na2 = g.num_actions2(x);
    Vec s1(na1, 0.0), s2(na2, 0.0);
    for (int y = 0; y < nx; ++y) {
      for (int a = 0; a < na1; ++a) s1[a] += g.q1[y][x][a];
      for (int a = 0; a < na2; ++a) s2[a] += g.q2[y][x][a];
    }
    auto spread = [](const Vec& v) {
      double lo = v[0], hi = v[0];
      for (double t : v) {
        lo = std::min(lo, t);
        hi = std::max(hi, t);
      }
      return hi - lo;
    };
    if (na1 > 0 && spread(s1) > kTol) flag(ViolationCode::ARATInconsistency, {1, x}, spread(s1));
    if (na2 > 0 && spread(s2) > kTol) flag(ViolationCode::ARATInconsistency, {2, x}, spread(s2));
    for (int a1 = 0; a1 < na1; ++a1) {
      for (int a2 = 0; a2 < na2; ++a2) {
        const double total = s1[a1] + s2[a2];
        if (std::fabs(total - 1.0) > kTol) {
          flag(ViolationCode::StochasticityViolation, {x, a1, a2}, std::fabs(total - 1.0));
        }
      }
    }
  }

  rep.ok = rep.violations.empty();
  return rep;
}

Table4 assemble_kernel(const GameInstance& g) {
  ValidationReport rep = validate(g);
  if (!rep.ok) {
    const Violation& v = rep.violations.front();
    throw InvalidInstanceError(std::string("assemble_kernel: invalid instance, first violation ") +
                                   violation_code_name(v.code),
                               std::move(rep));
  }
  const int nx = g.num_states();
  Table4 q(nx);
  for (int x = 0; x < nx; ++x) {
    const int na1 = g.num_actions1(x);
    const int na2 = g.num_actions2(x);
    q[x].assign(na1, Table2(na2, Vec(nx, 0.0)));
    for (int a1 = 0; a1 < na1; ++a1) {
      for (int a2 = 0; a2 < na2; ++a2) {
        for (int y = 0; y < nx; ++y) q[x][a1][a2][y] = g.q1[y][x][a1] + g.q2[y][x][a2];
      }
    }
  }
  return q;
}

Table3 assemble_reward(const GameInstance& g, int player) {
  if (player != 1 && player != 2) throw std::invalid_argument("assemble_reward: player must be 1 or 2");
  const int nx = g.num_states();
  Table3 r(nx);
  for (int x = 0; x < nx; ++x) {
    const int na1 = g.num_actions1(x);
    const int na2 = g.num_actions2(x);
    r[x].assign(na1, Vec(na2, 0.0));
    for (int a1 = 0; a1 < na1; ++a1) {
      for (int a2 = 0; a2 < na2; ++a2) {
        r[x][a1][a2] = player == 1 ? g.reward1_own[x][a1] + g.reward1_opp[x][a2]
                                   : g.reward2_opp[x][a1] + g.reward2_own[x][a2];
      }
    }
  }
  return r;
}

Table4 assemble_constraint(const GameInstance& g, int player) {
  if (player != 1 && player != 2) throw std::invalid_argument("assemble_constraint: player must be 1 or 2");
  const int nx = g.num_states();
  Table4 c(nx);
  for (int x = 0; x < nx; ++x) {
    const int na1 = g.num_actions1(x);
    const int na2 = g.num_actions2(x);
    c[x].assign(na1, Table2(na2, Vec(g.p, 0.0)));
    for (int a1 = 0; a1 < na1; ++a1) {
      for (int a2 = 0; a2 < na2; ++a2) {
        for (int k = 0; k < g.p; ++k) {
          c[x][a1][a2][k] = player == 1
                                ? g.constraint1_own[x][a1][k] + g.constraint1_opp[x][a2][k]
                                : g.constraint2_opp[x][a1][k] + g.constraint2_own[x][a2][k];
        }
      }
    }
  }
  return c;
}

}  // namespace arat

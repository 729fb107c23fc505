#include "arat/json_io.hpp"

#include <cmath>

namespace arat {
namespace {

using nlohmann::json;

std::string idx(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw FormatError("document: expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  return *it;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) throw FormatError(path + ": expected a number");
  return j.get<double>();
}

Vec vec_at(const json& j, const std::string& path, std::size_t want) {
  if (!j.is_array() || j.size() != want) {
    throw FormatError(path + ": expected an array of " + std::to_string(want) + " numbers");
  }
  Vec out(want, 0.0);
  for (std::size_t i = 0; i < want; ++i) out[i] = number_at(j[i], idx(path, i));
  return out;
}

const json& array_at(const json& j, const std::string& path, std::size_t want) {
  if (!j.is_array() || j.size() != want) {
    throw FormatError(path + ": expected an array of " + std::to_string(want) + " entries");
  }
  return j;
}

json vec_to_json(const Vec& v) { return json(v); }

json table2_to_json(const Table2& t) {
  json out = json::array();
  for (const auto& row : t) out.push_back(row);
  return out;
}

json table3_to_json(const Table3& t) {
  json out = json::array();
  for (const auto& slab : t) out.push_back(table2_to_json(slab));
  return out;
}

}  // namespace

json instance_to_json(const GameInstance& g) {
  json j;
  j["states"] = g.states;
  j["actions1"] = g.actions1;
  j["actions2"] = g.actions2;
  j["beta"] = g.beta;
  j["eta"] = g.eta;
  j["p"] = g.p;
  j["rho1"] = g.rho1;
  j["rho2"] = g.rho2;
  j["r1_own"] = table2_to_json(g.reward1_own);
  j["r1_opp"] = table2_to_json(g.reward1_opp);
  j["r2_own"] = table2_to_json(g.reward2_own);
  j["r2_opp"] = table2_to_json(g.reward2_opp);
  j["c1_own"] = table3_to_json(g.constraint1_own);
  j["c1_opp"] = table3_to_json(g.constraint1_opp);
  j["c2_own"] = table3_to_json(g.constraint2_own);
  j["c2_opp"] = table3_to_json(g.constraint2_opp);
  j["q1"] = table3_to_json(g.q1);
  j["q2"] = table3_to_json(g.q2);
  return j;
}

GameInstance instance_from_json(const json& j) {
  GameInstance g;

  const json& states = field(j, "states");
  if (!states.is_array() || states.empty()) throw FormatError("states: expected a nonempty array");
  for (std::size_t x = 0; x < states.size(); ++x) {
    if (!states[x].is_string()) throw FormatError(idx("states", x) + ": expected a string");
    g.states.push_back(states[x].get<std::string>());
  }
  const std::size_t nx = g.states.size();

  auto parse_actions = [&](const char* key) {
    std::vector<std::vector<std::string>> out;
    const json& arr = array_at(field(j, key), key, nx);
    for (std::size_t x = 0; x < nx; ++x) {
      const json& row = arr[x];
      if (!row.is_array() || row.empty()) {
        throw FormatError(idx(key, x) + ": expected a nonempty array of action labels");
      }
      std::vector<std::string> labels;
      for (std::size_t a = 0; a < row.size(); ++a) {
        if (!row[a].is_string()) throw FormatError(idx(idx(key, x), a) + ": expected a string");
        labels.push_back(row[a].get<std::string>());
      }
      out.push_back(std::move(labels));
    }
    return out;
  };
  g.actions1 = parse_actions("actions1");
  g.actions2 = parse_actions("actions2");

  g.beta = number_at(field(j, "beta"), "beta");
  const json& jp = field(j, "p");
  if (!jp.is_number_integer() || jp.get<int>() < 0) throw FormatError("p: expected a nonnegative integer");
  g.p = jp.get<int>();
  g.eta = vec_at(field(j, "eta"), "eta", nx);
  g.rho1 = vec_at(field(j, "rho1"), "rho1", static_cast<std::size_t>(g.p));
  g.rho2 = vec_at(field(j, "rho2"), "rho2", static_cast<std::size_t>(g.p));

  auto actions_of = [&](bool own1, std::size_t x) {
    return own1 ? g.actions1[x].size() : g.actions2[x].size();
  };
  auto parse_table2 = [&](const char* key, bool own1) {
    Table2 out(nx);
    const json& arr = array_at(field(j, key), key, nx);
    for (std::size_t x = 0; x < nx; ++x) out[x] = vec_at(arr[x], idx(key, x), actions_of(own1, x));
    return out;
  };
  g.reward1_own = parse_table2("r1_own", true);
  g.reward1_opp = parse_table2("r1_opp", false);
  g.reward2_own = parse_table2("r2_own", false);
  g.reward2_opp = parse_table2("r2_opp", true);

  auto parse_table3 = [&](const char* key, bool own1) {
    Table3 out(nx);
    const json& arr = array_at(field(j, key), key, nx);
    for (std::size_t x = 0; x < nx; ++x) {
      const json& row = array_at(arr[x], idx(key, x), actions_of(own1, x));
      for (std::size_t a = 0; a < row.size(); ++a) {
        out[x].push_back(vec_at(row[a], idx(idx(key, x), a), static_cast<std::size_t>(g.p)));
      }
    }
    return out;
  };
  g.constraint1_own = parse_table3("c1_own", true);
  g.constraint1_opp = parse_table3("c1_opp", false);
  g.constraint2_own = parse_table3("c2_own", false);
  g.constraint2_opp = parse_table3("c2_opp", true);

  auto parse_q = [&](const char* key, bool own1) {
    Table3 out(nx);
    const json& arr = array_at(field(j, key), key, nx);
    for (std::size_t y = 0; y < nx; ++y) {
      const json& slab = array_at(arr[y], idx(key, y), nx);
      for (std::size_t x = 0; x < nx; ++x) {
        out[y].push_back(vec_at(slab[x], idx(idx(key, y), x), actions_of(own1, x)));
      }
    }
    return out;
  };
  g.q1 = parse_q("q1", true);
  g.q2 = parse_q("q2", false);
  return g;
}

json profile_to_json(const StationaryPolicy& pi1, const StationaryPolicy& pi2) {
  json j;
  j["pi1"] = table2_to_json(pi1.prob);
  j["pi2"] = table2_to_json(pi2.prob);
  return j;
}

std::pair<StationaryPolicy, StationaryPolicy> profile_from_json(const json& j,
                                                                const GameInstance& g) {
  const std::size_t nx = g.states.size();
  auto parse_policy = [&](const char* key, int player) {
    StationaryPolicy pi;
    pi.player = player;
    pi.prob.resize(nx);
    const json& arr = array_at(field(j, key), key, nx);
    for (std::size_t x = 0; x < nx; ++x) {
      const std::size_t na = player == 1 ? g.actions1[x].size() : g.actions2[x].size();
      pi.prob[x] = vec_at(arr[x], idx(key, x), na);
      double sum = 0.0;
      for (double v : pi.prob[x]) {
        if (v < 0.0) throw FormatError(idx(key, x) + ": negative probability");
        sum += v;
      }
      if (std::fabs(sum - 1.0) > 1e-9) {
        throw FormatError(idx(key, x) + ": row sums to " + std::to_string(sum) + ", not 1");
      }
    }
    return pi;
  };
  return {parse_policy("pi1", 1), parse_policy("pi2", 2)};
}

json validation_to_json(const ValidationReport& rep) {
  json j;
  j["ok"] = rep.ok;
  json arr = json::array();
  for (const Violation& v : rep.violations) {
    arr.push_back({{"code", violation_code_name(v.code)},
                   {"indices", v.indices},
                   {"residual", v.residual}});
  }
  j["violations"] = arr;
  return j;
}

json verification_to_json(const NashVerification& v) {
  json j;
  j["epsilon"] = v.epsilon;
  j["passed"] = v.passed;
  j["payoffs"] = {v.payoffs[0], v.payoffs[1]};
  j["constraints"] = {vec_to_json(v.constraints[0]), vec_to_json(v.constraints[1])};
  for (int i = 0; i < 2; ++i) {
    json side;
    side["feasibility_ok"] = v.feasibility_ok[i];
    side["feasibility_slack"] =
        std::isfinite(v.feasibility_slack[i]) ? json(v.feasibility_slack[i]) : json("unconstrained");
    side["regret"] = v.regret[i];
    side["regret_ok"] = v.regret_ok[i];
    side["deviation_infeasible"] = v.deviation_infeasible[i];
    j[i == 0 ? "player1" : "player2"] = side;
  }
  return j;
}

json report_to_json(const EquilibriumReport& rep) {
  json j;
  j["converged"] = rep.converged;
  j["iterations"] = rep.iterations;
  j["pi1"] = table2_to_json(rep.pi1.prob);
  j["pi2"] = table2_to_json(rep.pi2.prob);
  j["payoffs"] = {rep.verification.payoffs[0], rep.verification.payoffs[1]};
  j["constraints"] = {vec_to_json(rep.verification.constraints[0]),
                      vec_to_json(rep.verification.constraints[1])};
  j["regrets"] = {rep.verification.regret[0], rep.verification.regret[1]};
  j["policy_change_trace"] = rep.policy_change_trace;
  json margins = json::array();
  for (const auto& m : rep.slater_margins) {
    margins.push_back({std::isfinite(m[0]) ? json(m[0]) : json("unconstrained"),
                       std::isfinite(m[1]) ? json(m[1]) : json("unconstrained")});
  }
  j["slater_margins"] = margins;
  j["slater_failure"] = rep.slater_failure;
  j["feasibility_restoration_used"] = rep.feasibility_restoration_used;
  j["failure_note"] = rep.failure_note;
  j["verification"] = verification_to_json(rep.verification);
  return j;
}

json occupation_to_json(const OccupationMeasure& mu) {
  json j;
  j["joint"] = table3_to_json(mu.joint);
  j["x_marginal"] = mu.x_marginal;
  j["marginal1"] = table2_to_json(mu.marginal1);
  j["marginal2"] = table2_to_json(mu.marginal2);
  double mass = 0.0;
  for (double v : mu.x_marginal) mass += v;
  j["mass"] = mass;
  return j;
}

json simulation_to_json(const SimulationEstimate& est) {
  json j;
  j["payoff"] = {est.payoff[0], est.payoff[1]};
  j["payoff_stderr"] = {est.payoff_se[0], est.payoff_se[1]};
  j["constraint"] = {vec_to_json(est.constraint[0]), vec_to_json(est.constraint[1])};
  j["constraint_stderr"] = {vec_to_json(est.constraint_se[0]), vec_to_json(est.constraint_se[1])};
  j["occupation"] = table3_to_json(est.occupation);
  double mass = 0.0;
  for (const auto& sx : est.occupation) {
    for (const auto& row : sx) {
      for (double v : row) mass += v;
    }
  }
  j["occupation_mass"] = mass;
  return j;
}

json sequence_to_json(const PerturbedSequenceResult& seq) {
  json j;
  j["level_shift_scale"] = seq.level_shift_scale;
  json steps = json::array();
  for (std::size_t n = 0; n < seq.steps.size(); ++n) {
    const PerturbedStep& st = seq.steps[n];
    steps.push_back({{"n", n},
                     {"eta", st.instance.eta},
                     {"rho1", st.instance.rho1},
                     {"rho2", st.instance.rho2},
                     {"report", report_to_json(st.report)}});
  }
  j["steps"] = steps;
  j["final_verification_on_original"] = verification_to_json(seq.final_on_original);
  return j;
}

}  // namespace arat

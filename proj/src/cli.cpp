#include "arat/cli.hpp"

#include <fstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "arat/best_response.hpp"
#include "arat/equilibrium.hpp"
#include "arat/game.hpp"
#include "arat/json_io.hpp"
#include "arat/occupation.hpp"
#include "arat/simulate.hpp"

namespace arat {
namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

bool read_json_file(const std::string& path, nlohmann::json& j, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "cannot open file: " << path << "\n";
    return false;
  }
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    err << path << ": " << e.what() << "\n";
    return false;
  }
  return true;
}

bool write_json_file(const std::string& path, const nlohmann::json& j, std::ostream& err) {
  std::ofstream out(path);
  if (!out) {
    err << "cannot write file: " << path << "\n";
    return false;
  }
  out << j.dump(2) << "\n";
  return true;
}

// Returns 0 once `g` holds the parsed instance, else the exit code.
int load_instance(const std::string& path, GameInstance& g, std::ostream& err) {
  nlohmann::json j;
  if (!read_json_file(path, j, err)) return kUsage;
  try {
    g = instance_from_json(j);
  } catch (const FormatError& e) {
    err << path << ": " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}

// As load_instance, but additionally rejects instances that fail model
// validation (exit 1: the file is well formed, the model is not).
int load_valid_instance(const std::string& path, GameInstance& g, std::ostream& err) {
  if (int rc = load_instance(path, g, err); rc != 0) return rc;
  const ValidationReport rep = validate(g);
  if (!rep.ok) {
    err << path << ": invalid instance\n" << validation_to_json(rep).dump(2) << "\n";
    return kFailure;
  }
  return 0;
}

int load_profile(const std::string& path, const GameInstance& g, StationaryPolicy& pi1,
                 StationaryPolicy& pi2, std::ostream& err) {
  nlohmann::json j;
  if (!read_json_file(path, j, err)) return kUsage;
  try {
    std::tie(pi1, pi2) = profile_from_json(j, g);
  } catch (const FormatError& e) {
    err << path << ": " << e.what() << "\n";
    return kUsage;
  }
  return 0;
}

int cmd_validate(const std::string& instance_path, std::ostream& out, std::ostream& err) {
  GameInstance g;
  if (int rc = load_instance(instance_path, g, err); rc != 0) return rc;
  const ValidationReport rep = validate(g);
  out << validation_to_json(rep).dump(2) << "\n";
  return rep.ok ? kOk : kFailure;
}

int cmd_solve(const std::string& instance_path, const IterationConfig& config,
              const std::string& out_path, const std::string& occ_path, std::ostream& out,
              std::ostream& err) {
  GameInstance g;
  if (int rc = load_valid_instance(instance_path, g, err); rc != 0) return rc;
  EquilibriumReport rep;
  try {
    rep = iterate(g, config);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  out << (rep.converged ? "converged" : "did not converge") << " after " << rep.iterations
      << " iterations\n";
  out << "payoffs: " << rep.verification.payoffs[0] << " " << rep.verification.payoffs[1] << "\n";
  out << "regrets: " << rep.verification.regret[0] << " " << rep.verification.regret[1] << "\n";
  out << "verification at epsilon " << config.epsilon << ": "
      << (rep.verification.passed ? "passed" : "failed") << "\n";
  if (!rep.failure_note.empty()) out << rep.failure_note << "\n";
  if (!out_path.empty() && !write_json_file(out_path, report_to_json(rep), err)) return kUsage;
  if (!occ_path.empty()) {
    const OccupationMeasure mu = occupation_measure(g, rep.pi1, rep.pi2);
    if (!write_json_file(occ_path, occupation_to_json(mu), err)) return kUsage;
  }
  return rep.converged && rep.verification.passed ? kOk : kFailure;
}

int cmd_best_response(const std::string& instance_path, int player,
                      const std::string& opponent_path, const std::string& out_path,
                      std::ostream& out, std::ostream& err) {
  GameInstance g;
  if (int rc = load_valid_instance(instance_path, g, err); rc != 0) return rc;
  StationaryPolicy pi1, pi2;
  if (int rc = load_profile(opponent_path, g, pi1, pi2, err); rc != 0) return rc;
  const StationaryPolicy& opponent = player == 1 ? pi2 : pi1;
  const BestResponseResult br = constrained_best_response(g, player, opponent);
  out << "player " << player << " best response: " << (br.optimal ? "optimal" : "infeasible")
      << "\n";
  if (br.optimal) out << "value: " << br.value << "\n";
  nlohmann::json j;
  j["player"] = player;
  j["optimal"] = br.optimal;
  j["value"] = br.value;
  j["policy"] = br.policy.prob;
  j["marginal"] = br.marginal.table;
  j["constraint_values"] = br.constraint_values;
  if (!out_path.empty() && !write_json_file(out_path, j, err)) return kUsage;
  return br.optimal ? kOk : kFailure;
}

int cmd_verify(const std::string& instance_path, const std::string& profile_path, double epsilon,
               std::ostream& out, std::ostream& err) {
  GameInstance g;
  if (int rc = load_valid_instance(instance_path, g, err); rc != 0) return rc;
  StationaryPolicy pi1, pi2;
  if (int rc = load_profile(profile_path, g, pi1, pi2, err); rc != 0) return rc;
  const NashVerification v = verify_epsilon_nash(g, pi1, pi2, epsilon);
  out << verification_to_json(v).dump(2) << "\n";
  return v.passed ? kOk : kFailure;
}

int cmd_simulate(const std::string& instance_path, const std::string& profile_path,
                 const SimulationConfig& config, std::ostream& out, std::ostream& err) {
  GameInstance g;
  if (int rc = load_valid_instance(instance_path, g, err); rc != 0) return rc;
  StationaryPolicy pi1, pi2;
  if (int rc = load_profile(profile_path, g, pi1, pi2, err); rc != 0) return rc;
  SimulationEstimate est;
  try {
    est = simulate(g, pi1, pi2, config);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  out << simulation_to_json(est).dump(2) << "\n";
  return kOk;
}

int cmd_generate(std::uint64_t seed, int states, int actions1, int actions2, int p, double beta,
                 const std::string& out_path, std::ostream& out, std::ostream& err) {
  GameInstance g;
  try {
    g = generate_random(seed, states, actions1, actions2, p, beta);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  if (!write_json_file(out_path, instance_to_json(g), err)) return kUsage;
  out << "wrote " << out_path << ": " << states << " states, " << actions1 << "x" << actions2
      << " actions, p=" << p << ", beta=" << beta << "\n";
  return kOk;
}

int cmd_perturb(const std::string& instance_path, int n_max, const std::string& out_path,
                std::ostream& out, std::ostream& err) {
  GameInstance g;
  if (int rc = load_valid_instance(instance_path, g, err); rc != 0) return rc;
  PerturbedSequenceResult seq;
  try {
    seq = perturbed_sequence(g, n_max);
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n";
    return kUsage;
  }
  out << "level shift scale: " << seq.level_shift_scale << "\n";
  out << "steps solved: " << seq.steps.size() << "\n";
  out << "final profile on the original instance: "
      << (seq.final_on_original.passed ? "passed" : "failed") << " at epsilon "
      << seq.final_on_original.epsilon << "\n";
  if (!out_path.empty() && !write_json_file(out_path, sequence_to_json(seq), err)) return kUsage;
  return seq.final_on_original.passed ? kOk : kFailure;
}

}  // namespace

CommandOutcome run_cli(const std::vector<std::string>& args, std::ostream& out,
                       std::ostream& err) {
  CLI::App app{"constrained stochastic-game solver"};
  app.require_subcommand(1);

  std::string instance_path, profile_path, opponent_path, out_path, occ_path;
  IterationConfig config;
  int player = 1;
  double epsilon = IterationConfig{}.epsilon;
  SimulationConfig sim;
  std::uint64_t seed = 0;
  int states = 1, actions1 = 1, actions2 = 1, p = 0, n_max = 0;
  double beta = 0.9;

  CLI::App* c_validate = app.add_subcommand("validate", "check an instance file");
  c_validate->add_option("instance", instance_path, "instance JSON file")->required();

  CLI::App* c_solve = app.add_subcommand("solve", "search for an equilibrium profile");
  c_solve->add_option("instance", instance_path, "instance JSON file")->required();
  c_solve->add_option("--damping", config.damping, "update step size in (0, 1]");
  c_solve->add_option("--max-iter", config.max_iterations, "iteration cap");
  c_solve->add_option("--epsilon", config.epsilon, "certification slack")
      ->check(CLI::PositiveNumber);
  c_solve->add_option("--tolerance", config.tolerance, "stopping tolerance")
      ->check(CLI::PositiveNumber);
  c_solve->add_option("--out", out_path, "write the JSON report here");
  c_solve->add_option("--dump-occupation", occ_path, "write the final occupation measure here");

  CLI::App* c_br = app.add_subcommand("best-response", "solve one player's constrained response");
  c_br->add_option("instance", instance_path, "instance JSON file")->required();
  c_br->add_option("--player", player, "responding player")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  c_br->add_option("--opponent", opponent_path, "profile JSON file (opponent side is used)")
      ->required();
  c_br->add_option("--out", out_path, "write the JSON report here");

  CLI::App* c_verify = app.add_subcommand("verify", "check a profile for epsilon-equilibrium");
  c_verify->add_option("instance", instance_path, "instance JSON file")->required();
  c_verify->add_option("--profile", profile_path, "profile JSON file")->required();
  c_verify->add_option("--epsilon", epsilon, "certification slack")->check(CLI::PositiveNumber);

  CLI::App* c_simulate = app.add_subcommand("simulate", "Monte Carlo estimate under a profile");
  c_simulate->add_option("instance", instance_path, "instance JSON file")->required();
  c_simulate->add_option("--profile", profile_path, "profile JSON file")->required();
  c_simulate->add_option("--episodes", sim.episodes, "number of episodes")
      ->required()
      ->check(CLI::PositiveNumber);
  c_simulate->add_option("--horizon", sim.horizon, "truncation horizon")
      ->required()
      ->check(CLI::PositiveNumber);
  c_simulate->add_option("--seed", sim.seed, "stream seed")->required();

  CLI::App* c_generate = app.add_subcommand("generate", "write a random valid instance");
  c_generate->add_option("--seed", seed, "generator seed")->required();
  c_generate->add_option("--states", states, "number of states")->required();
  c_generate->add_option("--actions1", actions1, "actions per state, player 1")->required();
  c_generate->add_option("--actions2", actions2, "actions per state, player 2")->required();
  c_generate->add_option("--p", p, "constraint dimension")->required();
  c_generate->add_option("--beta", beta, "discount factor in (0, 1)")->required();
  c_generate->add_option("--out", out_path, "output instance file")->required();

  CLI::App* c_perturb = app.add_subcommand("perturb", "run the vanishing-perturbation schedule");
  c_perturb->add_option("instance", instance_path, "instance JSON file")->required();
  c_perturb->add_option("--n-max", n_max, "last schedule index")->required();
  c_perturb->add_option("--out", out_path, "write the JSON report here");

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("aratsolve");
  for (const std::string& a : args) argv_storage.push_back(a);
  std::vector<const char*> argv;
  argv.reserve(argv_storage.size());
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return {rc == 0 ? kOk : kUsage};
  }

  if (c_validate->parsed()) return {cmd_validate(instance_path, out, err)};
  if (c_solve->parsed()) return {cmd_solve(instance_path, config, out_path, occ_path, out, err)};
  if (c_br->parsed())
    return {cmd_best_response(instance_path, player, opponent_path, out_path, out, err)};
  if (c_verify->parsed()) return {cmd_verify(instance_path, profile_path, epsilon, out, err)};
  if (c_simulate->parsed()) return {cmd_simulate(instance_path, profile_path, sim, out, err)};
  if (c_generate->parsed())
    return {cmd_generate(seed, states, actions1, actions2, p, beta, out_path, out, err)};
  if (c_perturb->parsed()) return {cmd_perturb(instance_path, n_max, out_path, out, err)};
  err << "no subcommand given\n";
  return {kUsage};
}

}  // namespace arat

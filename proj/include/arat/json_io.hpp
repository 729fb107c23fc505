#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <json.hpp>

#include "arat/equilibrium.hpp"
#include "arat/game.hpp"
#include "arat/occupation.hpp"
#include "arat/simulate.hpp"

namespace arat {

/// Raised when a JSON document does not match the expected schema; the
/// message names the offending field.
struct FormatError : std::runtime_error {
  explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Instance files.  Keys: states, actions1, actions2, beta, eta, p, rho1,
// rho2, r1_own, r1_opp, r2_own, r2_opp, c1_own, c1_opp, c2_own, c2_opp,
// q1, q2.  Tables are nested arrays indexed [state][action] (constraints
// add a trailing [k]; q1/q2 are [y][x][a]).  Serialized numbers parse back
// to the identical double.
nlohmann::json instance_to_json(const GameInstance& g);
GameInstance instance_from_json(const nlohmann::json& j);

// Profile files: {"pi1": [[...]], "pi2": [[...]]}, rows indexed like the
// instance's action sets.  Rows must be nonnegative and sum to 1 within
// 1e-9; entries are kept exactly as written.
nlohmann::json profile_to_json(const StationaryPolicy& pi1, const StationaryPolicy& pi2);
std::pair<StationaryPolicy, StationaryPolicy> profile_from_json(const nlohmann::json& j,
                                                                const GameInstance& g);

nlohmann::json validation_to_json(const ValidationReport& rep);
nlohmann::json verification_to_json(const NashVerification& v);
nlohmann::json report_to_json(const EquilibriumReport& rep);
nlohmann::json occupation_to_json(const OccupationMeasure& mu);
nlohmann::json simulation_to_json(const SimulationEstimate& est);
nlohmann::json sequence_to_json(const PerturbedSequenceResult& seq);

}  // namespace arat

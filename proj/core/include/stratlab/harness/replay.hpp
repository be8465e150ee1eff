#pragma once

// World records: everything needed to rerun one simulated IRL user exactly.
//
//   {
//     "seed": <uint64>, "user_id": <int>,
//     "width": 8, "height": 8, "gamma": 0.9,
//     "features": [[0, 1, ...], ...],      // one row per state, row-major grid
//     "theta_star": [...], "phi_star": <real>, "alpha": <real>, "rho": <real>,
//     "mcmc": {"samples": 4000, "burn_in": 1000, "step": 0.1, "init_draws": 64,
//              "proposal": "full"}
//   }

#include <vector>

#include <nlohmann/json.hpp>

#include "stratlab/harness/config.hpp"
#include "stratlab/harness/csv.hpp"
#include "stratlab/harness/experiment.hpp"

namespace stratlab::harness {

nlohmann::json world_record(const IrlUser& user, const IrlSettings& settings);

// Rebuilds the user and the MCMC settings stored alongside it.
IrlUser user_from_record(const nlohmann::json& record, IrlSettings& settings);

// Reruns every IRL learner (or the given subset) on the recorded user and
// returns rows in the raw IRL schema.
CsvTable replay(const nlohmann::json& record, const std::vector<std::string>& learners = {});

}  // namespace stratlab::harness

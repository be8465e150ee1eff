#pragma once

// JSON form of a belief: {"points": [...], "mass": [...]}.

#include <nlohmann/json.hpp>

#include "stratlab/belief.hpp"

namespace stratlab {

template <class H>
void to_json(nlohmann::json& j, const Belief<H>& b) {
    j = nlohmann::json{{"points", std::vector<H>(b.grid().begin(), b.grid().end())},
                       {"mass", std::vector<double>(b.mass().begin(), b.mass().end())}};
}

template <class H>
Belief<H> belief_from_json(const nlohmann::json& j) {
    return Belief<H>(HypothesisGrid<H>(j.at("points").get<std::vector<H>>()),
                     j.at("mass").get<std::vector<double>>());
}

}  // namespace stratlab

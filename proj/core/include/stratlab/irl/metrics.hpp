#pragma once

#include <optional>
#include <span>

#include "stratlab/irl/demonstration.hpp"
#include "stratlab/irl/gridworld.hpp"
#include "stratlab/irl/inference.hpp"

namespace stratlab::irl {

struct Metrics {
    double reward_error = 0.0;                  // ‖θ* − θ̂‖₁
    std::optional<double> strategy_error;       // |φ* − φ̂|, joint learner only
    double policy_loss = 0.0;                   // mean_x V*(x; θ*) − V^π̂(x; θ*)
};

// π̂ is optimal for θ̂; both values are computed under the true reward.
double policy_loss(const Gridworld& world, std::span<const double> theta_star, std::span<const double> theta_hat);

Metrics compute_metrics(const JointPosterior& posterior, const Gridworld& world, const DemonstratorParams& truth,
                        bool report_strategy);

}  // namespace stratlab::irl

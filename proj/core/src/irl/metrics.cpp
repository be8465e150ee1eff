#include "stratlab/irl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "stratlab/irl/planning.hpp"

namespace stratlab::irl {

double policy_loss(const Gridworld& world, std::span<const double> theta_star, std::span<const double> theta_hat) {
    const auto r_true = world.rewards(theta_star);
    const auto r_hat = world.rewards(theta_hat);
    const Solution best = policy_iteration(world, r_true);
    const Solution learned = policy_iteration(world, r_hat);
    const auto v_learned = evaluate_policy(world, r_true, learned.policy);
    double loss = 0.0;
    for (int s = 0; s < world.num_states(); ++s) loss += best.value[s] - v_learned[s];
    // Rounding can leave a negative residue of order 1e-15 when the policies agree.
    return std::max(0.0, loss / world.num_states());
}

Metrics compute_metrics(const JointPosterior& posterior, const Gridworld& world, const DemonstratorParams& truth,
                        bool report_strategy) {
    truth.validate(world.num_features());
    if (posterior.theta_mean.size() != truth.theta.size())
        throw std::invalid_argument("compute_metrics: posterior dimension does not match the world");
    Metrics m;
    for (std::size_t k = 0; k < truth.theta.size(); ++k) m.reward_error += std::abs(truth.theta[k] - posterior.theta_mean[k]);
    if (report_strategy) m.strategy_error = std::abs(truth.phi - posterior.phi_mean);
    m.policy_loss = policy_loss(world, truth.theta, posterior.theta_mean);
    return m;
}

}  // namespace stratlab::irl

#include "stratlab/irl/demonstration.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace stratlab::irl {

void DemonstratorParams::validate(int num_features) const {
    if (theta.size() != static_cast<std::size_t>(num_features))
        throw std::invalid_argument("DemonstratorParams: theta has " + std::to_string(theta.size()) +
                                    " weights, world has " + std::to_string(num_features) + " features");
    if (!(phi >= -1.0 && phi <= 1.0)) throw std::invalid_argument("DemonstratorParams: phi must lie in [-1, 1]");
    if (!(alpha > 0.0)) throw std::invalid_argument("DemonstratorParams: alpha must be positive");
    if (!(noise_ratio >= 0.0 && noise_ratio <= 1.0))
        throw std::invalid_argument("DemonstratorParams: noise ratio must lie in [0, 1]");
}

namespace {

std::array<double, kNumMoves> logits(const Gridworld& world, std::span<const double> rewards, const Solution& sol,
                                     double phi, double alpha, int state) {
    std::array<double, kNumMoves> z{};
    for (int u = 0; u < kNumMoves; ++u) {
        const int nx = world.next(state, u);
        z[u] = alpha * (sol.q_at(state, u) + phi * (rewards[nx] - rewards[state]));
    }
    return z;
}

}  // namespace

std::array<double, kNumMoves> action_probabilities(const Gridworld& world, std::span<const double> rewards,
                                                   const Solution& sol, double phi, double alpha, int state) {
    auto z = logits(world, rewards, sol, phi, alpha, state);
    const double m = *std::max_element(z.begin(), z.end());
    double total = 0.0;
    for (double& v : z) {
        v = std::exp(v - m);
        total += v;
    }
    for (double& v : z) v /= total;
    return z;
}

double demo_likelihood(const Gridworld& world, std::span<const double> rewards, const Solution& sol, double phi,
                       double alpha, int state, int move) {
    if (move < 0 || move >= kNumMoves) throw std::out_of_range("demo_likelihood: move index");
    return action_probabilities(world, rewards, sol, phi, alpha, state)[move];
}

double demo_likelihood(const Gridworld& world, std::span<const double> theta, double phi, double alpha, int state,
                       int move) {
    const auto r = world.rewards(theta);
    const Solution sol = policy_iteration(world, r);
    return demo_likelihood(world, r, sol, phi, alpha, state, move);
}

double demo_log_likelihood(const Gridworld& world, std::span<const double> rewards, const Solution& sol, double phi,
                           double alpha, const Demonstration& demo) {
    if (demo.actions.size() != static_cast<std::size_t>(world.num_states()))
        throw std::invalid_argument("demo_log_likelihood: demonstration does not label every state");
    double ll = 0.0;
    for (int s = 0; s < world.num_states(); ++s) {
        const auto z = logits(world, rewards, sol, phi, alpha, s);
        const double m = *std::max_element(z.begin(), z.end());
        double total = 0.0;
        for (double v : z) total += std::exp(v - m);
        ll += z[demo.actions[s]] - m - std::log(total);
    }
    return ll;
}

Demonstration generate_demonstration(Rng& rng, const Gridworld& world, const DemonstratorParams& params) {
    params.validate(world.num_features());
    const auto r = world.rewards(params.theta);
    const Solution sol = policy_iteration(world, r);
    Demonstration demo;
    demo.actions.resize(world.num_states());
    for (int s = 0; s < world.num_states(); ++s) {
        // Both draws are always consumed so the stream position does not
        // depend on which branch is taken.
        const bool noisy = bernoulli(rng, params.noise_ratio);
        const auto p = action_probabilities(world, r, sol, params.phi, params.alpha, s);
        const auto modeled = static_cast<int>(sample_categorical(rng, p));
        const auto random = static_cast<int>(uniform_int(rng, 0, kNumMoves - 1));
        demo.actions[s] = noisy ? random : modeled;
    }
    return demo;
}

}  // namespace stratlab::irl

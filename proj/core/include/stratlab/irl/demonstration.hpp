#pragma once

// Strategy-biased Boltzmann demonstrations.
//
//   π(u | x, θ, φ) ∝ exp{α [Q(x, u, θ) + φ (R(x', θ) − R(x, θ))]}
//
// φ = 0 is the usual Boltzmann-rational demonstrator; φ → +1 favors moves into
// locally high-reward states and φ → −1 into low-reward ones. With noise
// ratio ρ the demonstrator instead picks a uniformly random move.

#include <array>
#include <span>
#include <vector>

#include "stratlab/irl/gridworld.hpp"
#include "stratlab/irl/planning.hpp"
#include "stratlab/rng.hpp"

namespace stratlab::irl {

struct DemonstratorParams {
    std::vector<double> theta;  // θ*
    double phi = 0.0;           // φ* in [−1, 1]
    double alpha = 10.0;        // rationality, > 0
    double noise_ratio = 0.0;   // ρ in [0, 1]

    void validate(int num_features) const;
};

// One move label per state.
struct Demonstration {
    std::vector<int> actions;
};

std::array<double, kNumMoves> action_probabilities(const Gridworld& world, std::span<const double> rewards,
                                                   const Solution& sol, double phi, double alpha, int state);

double demo_likelihood(const Gridworld& world, std::span<const double> rewards, const Solution& sol, double phi,
                       double alpha, int state, int move);

// Convenience form that plans for θ first.
double demo_likelihood(const Gridworld& world, std::span<const double> theta, double phi, double alpha, int state,
                       int move);

// Σ_x log π(u_x | x, θ, φ) over every labeled state.
double demo_log_likelihood(const Gridworld& world, std::span<const double> rewards, const Solution& sol, double phi,
                           double alpha, const Demonstration& demo);

Demonstration generate_demonstration(Rng& rng, const Gridworld& world, const DemonstratorParams& params);

// Teaching-model adapter for the generic learners: world state is a grid
// cell, the human action a move, θ the reward weights and φ the strategy.
// Plans from scratch on every call, so it is meant for small worlds.
class DemoTeachingModel {
public:
    DemoTeachingModel(const Gridworld& world, double alpha) : world_(&world), alpha_(alpha) {}
    double operator()(int state, int move, const std::vector<double>& theta, double phi) const {
        return demo_likelihood(*world_, theta, phi, alpha_, state, move);
    }

private:
    const Gridworld* world_;
    double alpha_;
};

}  // namespace stratlab::irl

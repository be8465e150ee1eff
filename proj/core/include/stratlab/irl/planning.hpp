#pragma once

// Optimal values and policies for a Gridworld under a fixed reward vector.
//
// Convention: Q(x, u) = R(x) + γ V(x'), where x' is the successor of x under
// u, so the reward is collected in the current state.

#include <span>
#include <vector>

#include "stratlab/irl/gridworld.hpp"

namespace stratlab::irl {

struct Solution {
    std::vector<double> value;  // V*(x)
    std::vector<double> q;      // Q(x, u), row-major states × kNumMoves
    std::vector<int> policy;    // argmax_u Q(x, u), lowest move on ties
    int iterations = 0;

    double q_at(int state, int move) const { return q[static_cast<std::size_t>(state) * kNumMoves + move]; }
};

// Bellman optimality iteration until the residual of the returned values is
// below tolerance·(1 − γ), which bounds their distance to V* by `tolerance`.
Solution value_iteration(const Gridworld& world, std::span<const double> rewards, double tolerance = 1e-6);
Solution value_iteration_for(const Gridworld& world, std::span<const double> theta, double tolerance = 1e-6);

// Policy iteration with exact evaluation; converges in a handful of sweeps
// when started from a nearby policy.
Solution policy_iteration(const Gridworld& world, std::span<const double> rewards,
                          std::span<const int> initial_policy = {});

// V^π solved exactly: a deterministic policy on a deterministic grid traces a
// path into a cycle, whose discounted return is closed-form.
std::vector<double> evaluate_policy(const Gridworld& world, std::span<const double> rewards,
                                    std::span<const int> policy);

// sup_x |max_u (R(x) + γ V(x')) − V(x)|
double bellman_residual(const Gridworld& world, std::span<const double> rewards, std::span<const double> value);

// Q table and greedy policy from a value function.
void fill_q_and_policy(const Gridworld& world, std::span<const double> rewards, Solution& sol);

}  // namespace stratlab::irl

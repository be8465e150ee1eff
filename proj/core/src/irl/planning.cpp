#include "stratlab/irl/planning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace stratlab::irl {

namespace {

void check_rewards(const Gridworld& world, std::span<const double> rewards) {
    if (rewards.size() != static_cast<std::size_t>(world.num_states()))
        throw std::invalid_argument("planning: reward vector length does not match the state count");
}

}  // namespace

void fill_q_and_policy(const Gridworld& world, std::span<const double> rewards, Solution& sol) {
    const int n = world.num_states();
    const double g = world.gamma();
    sol.q.resize(static_cast<std::size_t>(n) * kNumMoves);
    sol.policy.resize(n);
    for (int s = 0; s < n; ++s) {
        int best = 0;
        for (int u = 0; u < kNumMoves; ++u) {
            const double q = rewards[s] + g * sol.value[world.next(s, u)];
            sol.q[static_cast<std::size_t>(s) * kNumMoves + u] = q;
            if (q > sol.q[static_cast<std::size_t>(s) * kNumMoves + best]) best = u;
        }
        sol.policy[s] = best;
    }
}

Solution value_iteration(const Gridworld& world, std::span<const double> rewards, double tolerance) {
    check_rewards(world, rewards);
    if (!(tolerance > 0.0)) throw std::invalid_argument("value_iteration: tolerance must be positive");
    const int n = world.num_states();
    const double g = world.gamma();
    Solution sol;
    sol.value.assign(n, 0.0);
    std::vector<double> next(n);
    // Residual of the new iterate is at most γ·delta.
    const double stop = tolerance * (1.0 - g);
    for (;;) {
        double delta = 0.0;
        for (int s = 0; s < n; ++s) {
            double best = -INFINITY;
            for (int u = 0; u < kNumMoves; ++u) best = std::max(best, sol.value[world.next(s, u)]);
            next[s] = rewards[s] + g * best;
            delta = std::max(delta, std::abs(next[s] - sol.value[s]));
        }
        sol.value.swap(next);
        ++sol.iterations;
        if (g * delta <= stop || g == 0.0) break;
    }
    fill_q_and_policy(world, rewards, sol);
    return sol;
}

Solution value_iteration_for(const Gridworld& world, std::span<const double> theta, double tolerance) {
    const auto r = world.rewards(theta);
    return value_iteration(world, r, tolerance);
}

std::vector<double> evaluate_policy(const Gridworld& world, std::span<const double> rewards,
                                    std::span<const int> policy) {
    check_rewards(world, rewards);
    const int n = world.num_states();
    if (policy.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("evaluate_policy: policy length does not match the state count");
    const double g = world.gamma();
    enum : std::uint8_t { kUnseen, kOnPath, kDone };
    std::vector<std::uint8_t> status(n, kUnseen);
    std::vector<double> v(n, 0.0);
    std::vector<int> path;
    path.reserve(n);
    for (int start = 0; start < n; ++start) {
        if (status[start] != kUnseen) continue;
        path.clear();
        int s = start;
        while (status[s] == kUnseen) {
            status[s] = kOnPath;
            path.push_back(s);
            s = world.next(s, policy[s]);
        }
        std::size_t tail = path.size();
        if (status[s] == kOnPath) {
            // Cycle from s to the end of the path.
            const std::size_t begin = static_cast<std::size_t>(std::find(path.begin(), path.end(), s) - path.begin());
            double ret = 0.0;
            double disc = 1.0;
            for (std::size_t k = begin; k < path.size(); ++k) {
                ret += disc * rewards[path[k]];
                disc *= g;
            }
            v[path[begin]] = ret / (1.0 - disc);
            status[path[begin]] = kDone;
            for (std::size_t k = path.size() - 1; k > begin; --k) {
                v[path[k]] = rewards[path[k]] + g * v[world.next(path[k], policy[path[k]])];
                status[path[k]] = kDone;
            }
            tail = begin;
        }
        for (std::size_t k = tail; k-- > 0;) {
            v[path[k]] = rewards[path[k]] + g * v[world.next(path[k], policy[path[k]])];
            status[path[k]] = kDone;
        }
    }
    return v;
}

Solution policy_iteration(const Gridworld& world, std::span<const double> rewards, std::span<const int> initial_policy) {
    check_rewards(world, rewards);
    const int n = world.num_states();
    const double g = world.gamma();
    Solution sol;
    if (initial_policy.empty()) {
        sol.policy.assign(n, 0);
    } else {
        if (initial_policy.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("policy_iteration: initial policy has wrong length");
        sol.policy.assign(initial_policy.begin(), initial_policy.end());
    }
    // Each improvement strictly increases V, so the loop terminates; the cap
    // only guards against floating-point cycling.
    for (int iter = 0; iter < 10 * n + 10; ++iter) {
        sol.value = evaluate_policy(world, rewards, sol.policy);
        ++sol.iterations;
        bool changed = false;
        for (int s = 0; s < n; ++s) {
            const int cur = sol.policy[s];
            const double q_cur = g * sol.value[world.next(s, cur)];
            int best = cur;
            double q_best = q_cur;
            for (int u = 0; u < kNumMoves; ++u) {
                const double q = g * sol.value[world.next(s, u)];
                if (q > q_best + 1e-12 * (1.0 + std::abs(q_best))) {
                    q_best = q;
                    best = u;
                }
            }
            if (best != cur) {
                sol.policy[s] = best;
                changed = true;
            }
        }
        if (!changed) break;
    }
    fill_q_and_policy(world, rewards, sol);
    return sol;
}

double bellman_residual(const Gridworld& world, std::span<const double> rewards, std::span<const double> value) {
    check_rewards(world, rewards);
    double res = 0.0;
    for (int s = 0; s < world.num_states(); ++s) {
        double best = -INFINITY;
        for (int u = 0; u < kNumMoves; ++u) best = std::max(best, rewards[s] + world.gamma() * value[world.next(s, u)]);
        res = std::max(res, std::abs(best - value[s]));
    }
    return res;
}

}  // namespace stratlab::irl

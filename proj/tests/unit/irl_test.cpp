#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "stratlab/irl/demonstration.hpp"
#include "stratlab/irl/gridworld.hpp"
#include "stratlab/irl/inference.hpp"
#include "stratlab/irl/metrics.hpp"
#include "stratlab/irl/planning.hpp"
#include "stratlab/learning.hpp"
#include "stratlab/rng.hpp"

using namespace stratlab;
using namespace stratlab::irl;
using doctest::Approx;

namespace {

std::vector<double> random_theta(Rng& rng, int nf) {
    std::vector<double> t(nf);
    for (auto& v : t) v = uniform(rng, -1.0, 1.0);
    return t;
}

double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("gridworld construction") {
    CHECK_THROWS_AS(Gridworld(2, 2, 1, {0, 1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(Gridworld(2, 2, 1, {0, 1, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(Gridworld(2, 2, 1, {0, 1, 0, 1}, 1.0), std::invalid_argument);
    const Gridworld w(3, 2, 1, {0, 0, 0, 0, 0, 1});
    for (int s = 0; s < 6; ++s)
        for (int m = 0; m < kNumMoves; ++m) CHECK(w.next(s, m) == oracle::step(w, s, m));

    Rng rng = make_rng(51, 0);
    for (int i = 0; i < 20; ++i) {
        const auto g = Gridworld::random(rng, 3, 3, 4);
        for (int f = 0; f < 4; ++f) {
            int ones = 0;
            for (int s = 0; s < 9; ++s) ones += g.features(s)[f];
            CHECK(ones > 0);
            CHECK(ones < 9);
        }
    }
}

TEST_CASE("value iteration against the horizon-200 oracle") {
    Rng rng = make_rng(52, 0);
    for (int i = 0; i < 10; ++i)
        for (auto [w, h] : {std::pair{3, 3}, std::pair{8, 8}}) {
            const auto world = Gridworld::random(rng, w, h, 2 + i % 3);
            const auto theta = random_theta(rng, world.num_features());
            const auto r = world.rewards(theta);
            const auto sol = value_iteration(world, r);
            CHECK(sup_diff(sol.value, oracle::horizon_values(world, oracle::rewards(world, theta), 200)) <= 1e-4);
            CHECK(bellman_residual(world, r, sol.value) <= 1e-6);
            const auto pi = policy_iteration(world, r);
            CHECK(sup_diff(pi.value, sol.value) <= 1e-5);
        }
}

TEST_CASE("value iteration edge cases") {
    const Gridworld w(2, 2, 1, {0, 1, 0, 1});
    const std::vector<double> zero{0.0};
    const auto sol = value_iteration_for(w, zero);
    for (double v : sol.value) CHECK(v == 0.0);
    for (double q : sol.q) CHECK(q == 0.0);

    const Gridworld one(1, 1, 1, {1});
    const std::vector<double> r{0.7};
    CHECK(value_iteration_for(one, r).value[0] == Approx(7.0).epsilon(1e-6));
    CHECK(policy_iteration(one, one.rewards(r)).value[0] == Approx(7.0).epsilon(1e-12));
}

TEST_CASE("exact policy evaluation matches a linear solve") {
    Rng rng = make_rng(53, 0);
    for (int i = 0; i < 20; ++i) {
        const auto world = Gridworld::random(rng, 3 + i % 6, 3 + i % 4, 3);
        const auto r = world.rewards(random_theta(rng, 3));
        std::vector<int> pi(world.num_states());
        for (auto& m : pi) m = static_cast<int>(uniform_int(rng, 0, 3));
        CHECK(sup_diff(evaluate_policy(world, r, pi), oracle::policy_values(world, r, pi)) <= 1e-9);
    }
}

TEST_CASE("demonstration likelihood") {
    Rng rng = make_rng(54, 0);
    for (int i = 0; i < 30; ++i) {
        const auto world = Gridworld::random(rng, 4, 3, 3);
        const auto theta = random_theta(rng, 3);
        const double phi = uniform(rng, -1.0, 1.0);
        const double alpha = uniform(rng, 0.1, 25.0);
        const auto r = world.rewards(theta);
        const auto sol = value_iteration(world, r);
        const auto ov = oracle::optimal_values(world, oracle::rewards(world, theta));
        for (int s = 0; s < world.num_states(); ++s) {
            const auto p = action_probabilities(world, r, sol, phi, alpha, s);
            CHECK(p[0] + p[1] + p[2] + p[3] == Approx(1.0).epsilon(1e-9));
            const auto o = oracle::action_probs(world, r, ov, phi, alpha, s);
            for (int m = 0; m < 4; ++m) CHECK(std::abs(p[m] - o[m]) <= 1e-4);
        }
    }

    const auto world = Gridworld::random(rng, 4, 4, 2);
    const std::vector<double> theta{0.8, -0.4};
    const auto r = world.rewards(theta);
    const auto sol = value_iteration(world, r);
    for (int s = 0; s < world.num_states(); ++s) {
        const auto p = action_probabilities(world, r, sol, 0.5, 1e-9, s);
        for (double x : p) CHECK(x == Approx(0.25).epsilon(1e-6));
        // φ = 0 is the plain Boltzmann policy over Q.
        const auto b = action_probabilities(world, r, sol, 0.0, 3.0, s);
        double z = 0.0;
        for (int m = 0; m < 4; ++m) z += std::exp(3.0 * sol.q_at(s, m));
        for (int m = 0; m < 4; ++m) CHECK(b[m] == Approx(std::exp(3.0 * sol.q_at(s, m)) / z).epsilon(1e-9));
    }
}

TEST_CASE("demonstration sampling") {
    Rng rng = make_rng(55, 0);
    const auto big = Gridworld::random(rng, 100, 100, 3);
    DemonstratorParams noisy{{0.5, -0.5, 0.2}, 0.3, 10.0, 1.0};
    const auto d = generate_demonstration(rng, big, noisy);
    std::vector<int> counts(4, 0);
    for (int a : d.actions) ++counts[a];
    const double n = big.num_states(), sigma = std::sqrt(n * 0.25 * 0.75);
    for (int c : counts) CHECK(std::abs(c - n / 4) <= 3 * sigma);

    int agree = 0, total = 0;
    for (int i = 0; i < 20; ++i) {
        const auto w = Gridworld::random(rng, 8, 8, 4);
        DemonstratorParams p{random_theta(rng, 4), 0.0, 20.0, 0.0};
        const auto sol = value_iteration_for(w, p.theta);
        const auto demo = generate_demonstration(rng, w, p);
        // Corners and walls can tie several moves; any maximizer counts.
        for (int s = 0; s < w.num_states(); ++s, ++total)
            agree += sol.q_at(s, demo.actions[s]) >= sol.q_at(s, sol.policy[s]) - 1e-9;
    }
    CHECK(agree >= 0.95 * total);

    CHECK_THROWS_AS(DemonstratorParams({0.1}, 1.5, 10.0, 0.0).validate(1), std::invalid_argument);
    CHECK_THROWS_AS(DemonstratorParams({0.1}, 0.0, 0.0, 0.0).validate(1), std::invalid_argument);
    CHECK_THROWS_AS(DemonstratorParams({0.1, 0.2}, 0.0, 1.0, 0.0).validate(1), std::invalid_argument);
}

TEST_CASE("opposite strategies demonstrate differently near reward extremes") {
    Rng rng = make_rng(56, 0);
    const auto w = Gridworld::random(rng, 8, 8, 4);
    const auto theta = random_theta(rng, 4);
    const auto r = w.rewards(theta);
    const auto sol = value_iteration(w, r);
    int differ = 0;
    for (int s = 0; s < w.num_states(); ++s) {
        const auto plus = action_probabilities(w, r, sol, 1.0, 20.0, s);
        const auto minus = action_probabilities(w, r, sol, -1.0, 20.0, s);
        const auto mode = [](const std::array<double, 4>& p) { return std::max_element(p.begin(), p.end()) - p.begin(); };
        differ += mode(plus) != mode(minus);
    }
    CHECK(differ > 0);
}

TEST_CASE("argmax policy is invariant to positive reward scaling") {
    Rng rng = make_rng(57, 0);
    for (int i = 0; i < 10; ++i) {
        const auto w = Gridworld::random(rng, 5, 5, 3);
        const auto theta = random_theta(rng, 3);
        std::vector<double> scaled(theta);
        for (auto& v : scaled) v *= 3.7;
        CHECK(policy_iteration(w, w.rewards(theta)).policy == policy_iteration(w, w.rewards(scaled)).policy);
    }
}

TEST_CASE("log target equals the summed demonstration log-likelihood") {
    Rng rng = make_rng(58, 0);
    for (int i = 0; i < 10; ++i) {
        const auto w = Gridworld::random(rng, 6, 6, 3);
        DemonstratorParams p{random_theta(rng, 3), uniform(rng, -1, 1), 10.0, 0.0};
        const auto demo = generate_demonstration(rng, w, p);
        const auto theta = random_theta(rng, 3);
        const double phi = uniform(rng, -1, 1);
        const auto r = w.rewards(theta);
        const auto sol = value_iteration(w, r);
        CHECK(log_target(w, demo, 10.0, theta, phi) ==
              Approx(demo_log_likelihood(w, r, sol, phi, 10.0, demo)).epsilon(1e-6));
        CHECK(log_target(w, demo, 10.0, theta, 1.5) == -INFINITY);
    }
}

TEST_CASE("teaching-model adapter plugs into the generic learner") {
    const Gridworld w(2, 2, 1, {0, 1, 1, 0});
    const DemoTeachingModel model(w, 5.0);
    const HypothesisGrid<std::vector<double>> thetas(std::vector<std::vector<double>>{{-1.0}, {1.0}});
    auto b = uniform(thetas);
    // Moving right from state 0 (feature 0) into state 1 (feature 1) favors θ = +1.
    b = learning::observe_fixed(b, 0, static_cast<int>(Move::Right), model, 0.0);
    CHECK(b.prob({1.0}) > 0.5);
}

TEST_CASE("reflection keeps proposals in the box") {
    CHECK(reflect(0.3, 1.0) == Approx(0.3));
    CHECK(reflect(1.2, 1.0) == Approx(0.8));
    CHECK(reflect(-1.25, 1.0) == Approx(-0.75));
    CHECK(reflect(3.5, 1.0) == Approx(-0.5));
}

TEST_CASE("MH sampler matches the grid posterior on a tiny world") {
    Rng rng = make_rng(59, 0);
    const auto w = Gridworld::random(rng, 3, 3, 2);
    DemonstratorParams p{random_theta(rng, 2), uniform(rng, -1, 1), 5.0, 0.0};
    const auto demo = generate_demonstration(rng, w, p);
    Rng chain = make_rng(59, 1);
    const auto post = infer_joint(chain, w, demo, 5.0, PhiInferred{}, McmcOptions{60000, 2000, 0.3, 1.0});
    const auto ref = oracle::grid_posterior_means(w, demo.actions, 5.0, 24);
    for (int f = 0; f < 2; ++f) CHECK(std::abs(post.theta_mean[f] - ref.theta[f]) <= 0.05);
    CHECK(std::abs(post.phi_mean - ref.phi) <= 0.05);
    CHECK(post.num_samples() == 60000u);
    CHECK(post.acceptance_rate > 0.0);

    // Fixed learners keep φ clamped.
    Rng c2 = make_rng(59, 2);
    const auto fixed = infer_joint(c2, w, demo, 5.0, PhiFixed{-1.0}, McmcOptions{2000, 200, 0.1, 1.0});
    CHECK(fixed.phi_mean == -1.0);
}

TEST_CASE("coordinate proposals target the same posterior") {
    Rng rng = make_rng(61, 0);
    const auto w = Gridworld::random(rng, 3, 3, 2);
    DemonstratorParams p{random_theta(rng, 2), uniform(rng, -1, 1), 5.0, 0.0};
    const auto demo = generate_demonstration(rng, w, p);
    Rng chain = make_rng(61, 1);
    McmcOptions opts{90000, 3000, 0.3, 1.0};
    opts.proposal = Proposal::Coordinate;
    const auto post = infer_joint(chain, w, demo, 5.0, PhiInferred{}, opts);
    const auto ref = oracle::grid_posterior_means(w, demo.actions, 5.0, 24);
    for (int f = 0; f < 2; ++f) CHECK(std::abs(post.theta_mean[f] - ref.theta[f]) <= 0.05);
    CHECK(std::abs(post.phi_mean - ref.phi) <= 0.05);

    // One coordinate moves per accepted step.
    for (std::size_t i = 1; i < post.num_samples(); ++i) {
        int moved = 0;
        for (int k = 0; k < 3; ++k) moved += post.samples[i * 3 + k] != post.samples[(i - 1) * 3 + k];
        CHECK(moved <= 1);
    }
    CHECK(proposal_from_string(to_string(Proposal::Coordinate)) == Proposal::Coordinate);
    CHECK_THROWS_AS(proposal_from_string("gibbs"), std::invalid_argument);
}

TEST_CASE("metrics") {
    Rng rng = make_rng(60, 0);
    const auto w = Gridworld::random(rng, 8, 8, 4);
    const auto theta = random_theta(rng, 4);
    CHECK(policy_loss(w, theta, theta) == 0.0);
    std::vector<double> scaled(theta);
    for (auto& v : scaled) v *= 2.0;
    CHECK(policy_loss(w, theta, scaled) == 0.0);

    for (int i = 0; i < 20; ++i) {
        const auto small = Gridworld::random(rng, 3, 3, 2);
        const auto ts = random_theta(rng, 2);
        const auto th = random_theta(rng, 2);
        const auto r = oracle::rewards(small, ts);
        const auto vstar = oracle::optimal_values(small, r);
        const auto pi_hat = oracle::greedy_policy(small, oracle::optimal_values(small, oracle::rewards(small, th)));
        const auto vhat = oracle::policy_values(small, r, pi_hat);
        double loss = 0.0;
        for (int s = 0; s < 9; ++s) loss += (vstar[s] - vhat[s]) / 9.0;
        const double got = policy_loss(small, ts, th);
        CHECK(got >= 0.0);
        CHECK(std::abs(got - std::max(loss, 0.0)) <= 1e-6);
    }

    // One shared feature: every θ gives the same policy.
    const Gridworld flat(3, 3, 1, std::vector<std::uint8_t>(9, 1));
    CHECK(policy_loss(flat, std::vector<double>{0.4}, std::vector<double>{-0.9}) == 0.0);

    JointPosterior post;
    post.num_features = 4;
    post.theta_mean = theta;
    post.phi_mean = 0.25;
    const DemonstratorParams truth{theta, 0.5, 10.0, 0.0};
    const auto m = compute_metrics(post, w, truth, true);
    CHECK(m.reward_error == 0.0);
    CHECK(m.policy_loss == 0.0);
    CHECK(*m.strategy_error == Approx(0.25));
    CHECK_FALSE(compute_metrics(post, w, truth, false).strategy_error.has_value());
}

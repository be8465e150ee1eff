#include <doctest.h>

#include <cmath>
#include <vector>

#include "stratlab/learning.hpp"
#include "stratlab/rng.hpp"
#include "stratlab/sorting_world.hpp"

using namespace stratlab;
using namespace stratlab::learning;
using sorting::Strategy;
using doctest::Approx;

namespace {

const std::vector<int> kLengths{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};

// Both the full-support and short-only φ₁ variants.
const sorting::TeacherModel kModels[] = {sorting::TeacherModel{{true}}, sorting::TeacherModel{{false}}};

bool close(const Belief<int>& a, const Belief<int>& b, double tol = 1e-9) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::abs(a[i] - b[i]) > tol) return false;
    return a.size() == b.size();
}

// Direct product-grid Bayes over (θ, φ) for a whole stream.
std::vector<std::vector<double>> brute_joint(const std::vector<int>& us, const sorting::TeacherModel& m,
                                             const std::vector<double>& phi_prior) {
    std::vector<std::vector<double>> w(9, std::vector<double>(2));
    double z = 0.0;
    for (int th = 1; th <= 9; ++th)
        for (int k = 0; k < 2; ++k) {
            double p = phi_prior[k] / 9.0;
            for (int u : us) p *= m(kLengths, u, th, k == 0 ? Strategy::Phi1 : Strategy::Phi2);
            w[th - 1][k] = p;
            z += p;
        }
    for (auto& row : w)
        for (auto& v : row) v /= z;
    return w;
}

}  // namespace

TEST_CASE("observe_fixed examples") {
    const auto prior = uniform(sorting::boundary_grid());
    const auto flat = observe_fixed(prior, 0, 0, [](int, int, int, int) { return 0.3; }, 0);
    CHECK(close(flat, prior));

    const HypothesisGrid<int> g(std::vector<int>{2, 5, 8});
    const auto post = observe_fixed(uniform(g), kLengths, 3, kModels[0], Strategy::Phi2);
    // π(3 | θ, φ₂) = 0.1/1.6 for θ=2, 0.9/5 for θ=5, 0.9/7.4 for θ=8
    const double w[] = {0.1 / (2 * 0.9 + 8 * 0.1), 0.9 / (5 * 0.9 + 5 * 0.1), 0.9 / (8 * 0.9 + 2 * 0.1)};
    const double z = w[0] + w[1] + w[2];
    for (int i = 0; i < 3; ++i) CHECK(post[i] == Approx(w[i] / z).epsilon(1e-12));

    const auto pm = Belief<int>::point_mass(sorting::boundary_grid(), 4);
    CHECK(observe_fixed(pm, kLengths, 2, kModels[0], Strategy::Phi1).prob(4) == 1.0);
}

TEST_CASE("observe_prior_mixture examples") {
    const auto prior = uniform(sorting::boundary_grid());
    for (const auto& m : kModels)
        for (int u : {1, 4, 9}) {
            const auto fixed = observe_fixed(prior, kLengths, u, m, Strategy::Phi2);
            const auto pm = Belief<Strategy>::point_mass(sorting::strategy_grid(), Strategy::Phi2);
            CHECK(close(observe_prior_mixture(prior, kLengths, u, m, pm), fixed));
        }

    // Two strategies with identical π behave like either one.
    auto same = [](int, int u, int th, int) { return u <= th ? 0.7 : 0.3; };
    const HypothesisGrid<int> phis(std::vector<int>{0, 1});
    const auto mix = observe_prior_mixture(prior, 0, 3, same, Belief<int>(phis, {0.4, 0.6}));
    CHECK(close(mix, observe_fixed(prior, 0, 3, same, 0)));

    // Brute-force mixture Bayes.
    const auto half = uniform(sorting::strategy_grid());
    for (int u = 1; u <= 10; ++u) {
        const auto post = observe_prior_mixture(prior, kLengths, u, kModels[1], half);
        std::vector<double> w(9);
        double z = 0.0;
        for (int th = 1; th <= 9; ++th) {
            w[th - 1] = 0.5 * sorting::teacher_likelihood(kLengths, u, th, Strategy::Phi1, {false}) +
                        0.5 * sorting::teacher_likelihood(kLengths, u, th, Strategy::Phi2, {false});
            z += w[th - 1];
        }
        for (int th = 1; th <= 9; ++th) CHECK(post.prob(th) == Approx(w[th - 1] / z).epsilon(1e-12));
    }
}

TEST_CASE("observe_joint examples") {
    const auto theta0 = uniform(sorting::boundary_grid());
    const auto phi0 = uniform(sorting::strategy_grid());
    for (const auto& m : kModels) {
        // Singleton Φ
        const HypothesisGrid<Strategy> single(std::vector<Strategy>{Strategy::Phi1});
        const auto j1 = observe_joint(product(theta0, uniform(single)), kLengths, 6, m);
        CHECK(close(marginalize<0>(j1), observe_fixed(theta0, kLengths, 6, m, Strategy::Phi1)));

        // First observation equals the prior mixture.
        for (int u = 1; u <= 10; ++u) {
            const auto j = observe_joint(product(theta0, phi0), kLengths, u, m);
            CHECK(close(marginalize<0>(j), observe_prior_mixture(theta0, kLengths, u, m, phi0)));
        }

        // Two observations against enumeration.
        for (auto [u1, u2] : {std::pair{3, 5}, std::pair{1, 9}, std::pair{7, 7}}) {
            const auto j = observe_joint(observe_joint(product(theta0, phi0), kLengths, u1, m), kLengths, u2, m);
            const auto ref = brute_joint({u1, u2}, m, {0.5, 0.5});
            for (int th = 1; th <= 9; ++th)
                for (int k = 0; k < 2; ++k)
                    CHECK(j.prob({th, k == 0 ? Strategy::Phi1 : Strategy::Phi2}) ==
                          Approx(ref[th - 1][k]).epsilon(1e-12));
        }
    }
}

TEST_CASE("collapse: Fixed, point-mass PriorMixture and point-mass Joint agree on random streams") {
    Rng rng = make_rng(21, 0);
    const auto theta0 = uniform(sorting::boundary_grid());
    for (int stream = 0; stream < 100; ++stream) {
        const auto& m = kModels[stream % 2];
        const Strategy phi0 = stream % 4 < 2 ? Strategy::Phi1 : Strategy::Phi2;
        const auto pm = Belief<Strategy>::point_mass(sorting::strategy_grid(), phi0);
        Learner<int, Strategy> fixed(Fixed<Strategy>{phi0}, theta0);
        Learner<int, Strategy> prior(PriorMixture<Strategy>{pm}, theta0);
        Learner<int, Strategy> joint(joint_from_priors(theta0, pm), theta0);
        const int theta_star = static_cast<int>(uniform_int(rng, 1, 9));
        for (int t = 0; t < 10; ++t) {
            const int u = sorting::sample_teacher_action(rng, kLengths, theta_star, phi0, m.opts);
            fixed = fixed.observe(kLengths, u, m);
            prior = prior.observe(kLengths, u, m);
            joint = joint.observe(kLengths, u, m);
            CHECK(close(fixed.theta_belief(), prior.theta_belief()));
            CHECK(close(fixed.theta_belief(), joint.theta_belief()));
        }
    }
}

TEST_CASE("PriorMixture and Joint agree after one step and can diverge after two") {
    const auto theta0 = uniform(sorting::boundary_grid());
    const auto phi0 = Belief<Strategy>(sorting::strategy_grid(), {0.3, 0.7});
    const auto& m = kModels[0];
    bool diverged = false;
    for (int u1 = 1; u1 <= 10; ++u1) {
        Learner<int, Strategy> prior(PriorMixture<Strategy>{phi0}, theta0);
        Learner<int, Strategy> joint(joint_from_priors(theta0, phi0), theta0);
        prior = prior.observe(kLengths, u1, m);
        joint = joint.observe(kLengths, u1, m);
        CHECK(close(prior.theta_belief(), joint.theta_belief()));
        for (int u2 = 1; u2 <= 10; ++u2) {
            const auto p2 = prior.observe(kLengths, u2, m);
            const auto j2 = joint.observe(kLengths, u2, m);
            if (!close(p2.theta_belief(), j2.theta_belief(), 1e-6)) diverged = true;
        }
    }
    CHECK(diverged);
}

TEST_CASE("joint's implied θ likelihood is the mixture under b(φ | θ)") {
    const auto theta0 = uniform(sorting::boundary_grid());
    const auto phi0 = uniform(sorting::strategy_grid());
    const auto& m = kModels[1];
    Learner<int, Strategy> joint(joint_from_priors(theta0, phi0), theta0);
    joint = joint.observe(kLengths, 4, m).observe(kLengths, 6, m);
    const auto before = joint.joint_belief();
    const int u = 3;
    const auto after = joint.observe(kLengths, u, m).joint_belief();
    const auto mb = marginalize<0>(before);
    const auto ma = marginalize<0>(after);
    // Posterior ratios across θ must match b(θ)·Σ_φ π(u|θ,φ) b(φ|θ).
    std::vector<double> w(9);
    double z = 0.0;
    for (int th = 1; th <= 9; ++th) {
        const auto cond = conditional(before, th);
        double l = 0.0;
        for (auto phi : {Strategy::Phi1, Strategy::Phi2}) l += m(kLengths, u, th, phi) * cond.prob(phi);
        w[th - 1] = mb.prob(th) * l;
        z += w[th - 1];
    }
    for (int th = 1; th <= 9; ++th) CHECK(ma.prob(th) == Approx(w[th - 1] / z).epsilon(1e-12));
}

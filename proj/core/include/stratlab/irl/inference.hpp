#pragma once

// Metropolis-Hastings over reward weights θ ∈ [−1, 1]^|F| and, for the joint
// learner, the demonstration strategy φ ∈ [−1, 1]. The target density is the
// demonstration likelihood under a uniform prior on the box; proposals are
// per-coordinate Gaussian steps reflected at the box boundary, which keeps
// them symmetric.

#include <string_view>
#include <variant>
#include <vector>

#include "stratlab/irl/demonstration.hpp"
#include "stratlab/irl/gridworld.hpp"
#include "stratlab/rng.hpp"

namespace stratlab::irl {

// The four robots compared in the benchmark.
enum class Learner { Oracle, PhiMinusOne, PhiPlusOne, Joint };

std::string_view to_string(Learner l);
Learner learner_from_string(std::string_view name);
inline constexpr Learner kAllLearners[] = {Learner::Oracle, Learner::PhiMinusOne, Learner::PhiPlusOne,
                                           Learner::Joint};

struct PhiFixed {
    double phi;
};
struct PhiInferred {};
using PhiModel = std::variant<PhiFixed, PhiInferred>;

// Oracle is fixed at the true φ*.
PhiModel phi_model_for(Learner learner, double phi_star);

// Full moves every coordinate at once; Coordinate moves one coordinate,
// chosen uniformly, per iteration (PolicyWalk-style neighbours).
enum class Proposal { Full, Coordinate };

std::string_view to_string(Proposal p);
Proposal proposal_from_string(std::string_view name);

struct McmcOptions {
    int samples = 4000;   // retained after burn-in
    int burn_in = 1000;
    double step = 0.1;    // proposal standard deviation per coordinate
    double bound = 1.0;   // box half-width for θ and φ
    int init_draws = 0;   // prior draws screened for the starting point; 0 starts at the origin
    Proposal proposal = Proposal::Full;
};

struct JointPosterior {
    int num_features = 0;
    // Retained samples, row-major: θ components followed by φ. All samples
    // carry equal weight 1/n.
    std::vector<double> samples;
    std::vector<double> theta_mean;
    double phi_mean = 0.0;
    double acceptance_rate = 0.0;

    std::size_t num_samples() const { return samples.size() / (num_features + 1); }
};

// Log target at (θ, φ): the demonstration log-likelihood, or -inf outside the box.
double log_target(const Gridworld& world, const Demonstration& demo, double alpha, std::span<const double> theta,
                  double phi, double bound = 1.0);

JointPosterior infer_joint(Rng& rng, const Gridworld& world, const Demonstration& demo, double alpha,
                           const PhiModel& phi_model, const McmcOptions& opts = {});

// Reflects x into [−bound, bound].
double reflect(double x, double bound);

}  // namespace stratlab::irl

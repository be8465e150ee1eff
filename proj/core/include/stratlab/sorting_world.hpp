#pragma once

// Screw-sorting world. A human indicates one screw per timestep to teach a
// threshold classifier; screws with length ≤ θ* are short. The robot sorts
// every screw by its belief over θ after each indication.

#include <span>
#include <string_view>
#include <vector>

#include "stratlab/belief.hpp"
#include "stratlab/learning.hpp"
#include "stratlab/rng.hpp"

namespace stratlab::sorting {

// φ₁ points noisily at the short screw closest to the boundary;
// φ₂ points at short screws with weight 0.9 and long ones with 0.1.
enum class Strategy { Phi1, Phi2 };

std::string_view to_string(Strategy s);
Strategy strategy_from_string(std::string_view name);

struct TeacherOptions {
    // φ₁ points only at short screws. With false, its exp weight spans all
    // screws; Joint then stays well above the oracle learner after 10 steps.
    bool phi1_short_only = true;
};

inline constexpr int kNumScrews = 10;

class SortingTask {
public:
    // Lengths must be distinct and contain at least one short and one long
    // screw relative to theta_star.
    SortingTask(std::vector<int> lengths, int theta_star);

    // Lengths 1..10 with the given boundary.
    static SortingTask standard(int theta_star);

    const std::vector<int>& lengths() const { return lengths_; }
    int theta_star() const { return theta_star_; }
    bool is_short(int length) const { return length <= theta_star_; }

private:
    std::vector<int> lengths_;
    int theta_star_;
};

// Boundary hypotheses {1..9}.
HypothesisGrid<int> boundary_grid();
HypothesisGrid<Strategy> strategy_grid();

// π(u | lengths, θ, φ), normalized over the candidate screws.
double teacher_likelihood(std::span<const int> lengths, int u, int theta, Strategy phi,
                          const TeacherOptions& opts = {});

int sample_teacher_action(Rng& rng, std::span<const int> lengths, int theta_star, Strategy phi,
                          const TeacherOptions& opts = {});

// Teaching model adapter: the world state is the set of screw lengths.
struct TeacherModel {
    TeacherOptions opts;
    double operator()(const std::vector<int>& lengths, int u, int theta, Strategy phi) const {
        return teacher_likelihood(lengths, u, theta, phi, opts);
    }
};

struct Classification {
    std::vector<bool> is_short;  // aligned with the task lengths
    double expected_correct = 0.0;
};

// Labels a screw short iff Σ_{θ ≥ length} b(θ) > 0.5; ties go to long.
Classification classify(const Belief<int>& b, std::span<const int> lengths);

int count_errors(const Classification& c, const SortingTask& task);

using Kind = learning::LearnerKind<int, Strategy>;

struct EpisodeTrace {
    std::vector<int> actions;  // u at t = 1..T
    std::vector<int> errors;   // misclassified screws after observing u at t
};

// The action stream depends only on rng, task and φ*, so replaying the same
// seed with different learners presents them identical observations.
// Observations the learner's model gives zero probability leave its belief
// unchanged (possible for Fixed(φ₁) when φ₁ is restricted to short screws).
EpisodeTrace run_episode_stream(Rng& rng, const SortingTask& task, Strategy phi_star, const Kind& learner,
                                int timesteps, const Belief<int>& theta_prior, const TeacherOptions& opts = {});

}  // namespace stratlab::sorting

#pragma once

// Goal-legibility world: a robot moving toward one of two goals (cup, plate)
// chooses among six trajectory segments, {direct, slight, full exaggeration}
// toward either goal. Humans read the segments with a legible-preferring (ψ₁)
// or predictable-preferring (ψ₂) model.

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "stratlab/belief.hpp"
#include "stratlab/rng.hpp"
#include "stratlab/teaching.hpp"

namespace stratlab::goal {

enum class Goal { Cup, Plate };
enum class Style { Direct, Slight, Full };

// ψ₁ learns best from exaggerated segments, ψ₂ from goal-directed ones.
enum class Psi { Legible, Predictable };

std::string_view to_string(Goal g);
std::string_view to_string(Style s);
std::string_view to_string(Psi p);
Psi psi_from_string(std::string_view name);

Goal other(Goal g);

struct Action {
    Goal toward;
    Style style;

    friend bool operator==(const Action&, const Action&) = default;
};

inline constexpr std::size_t kNumActions = 6;

// Index layout: toward * 3 + style, cup first.
std::size_t action_index(const Action& a);
Action action_at(std::size_t index);
const std::array<Action, kNumActions>& all_actions();
std::string to_string(const Action& a);

// Probabilities of (direct, slight, full) toward the goal the human
// hypothesizes; the remaining mass is spread uniformly over the three
// segments toward the other goal.
struct PsiTable {
    std::array<double, 3> toward;

    double off_goal_each() const { return (1.0 - toward[0] - toward[1] - toward[2]) / 3.0; }
};

const PsiTable& psi_table(Psi psi);

double psi_likelihood(const Action& a, Goal theta, Psi psi);
// Index form; throws std::out_of_range for an unknown action.
double psi_likelihood(std::size_t action, Goal theta, Psi psi);

// The world has a single state.
struct Workspace {};

struct LearningModel {
    double operator()(const Workspace&, const Action& a, Goal theta, Psi psi) const {
        return psi_likelihood(a, theta, psi);
    }
};

HypothesisGrid<Goal> goal_grid();
HypothesisGrid<Psi> psi_grid();

struct GoalScenario {
    Goal theta_star = Goal::Plate;
    Belief<Goal> human_prior = uniform(goal_grid());
    // Perturbs the reported belief toward a random point on the simplex with
    // this weight. Zero means the report is exact.
    double feedback_noise = 0.0;
};

using Kind = teaching::TeacherKind<Psi>;

struct TeachingTrace {
    std::vector<std::size_t> actions;  // a at t = 1..T
    std::vector<double> b_theta_star;  // human belief in θ* after a
    std::vector<double> b_psi_star;    // robot belief in ψ* after observing the response
};

TeachingTrace run_teaching_episode(Rng& rng, const GoalScenario& scenario, Psi psi_star, const Kind& teacher,
                                   int timesteps, const teaching::TeacherOptions& opts = {});

}  // namespace stratlab::goal

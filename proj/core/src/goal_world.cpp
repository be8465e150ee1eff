#include "stratlab/goal_world.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace stratlab::goal {

std::string_view to_string(Goal g) { return g == Goal::Cup ? "cup" : "plate"; }

std::string_view to_string(Style s) {
    switch (s) {
        case Style::Direct: return "direct";
        case Style::Slight: return "slight";
        case Style::Full: return "full";
    }
    return "?";
}

std::string_view to_string(Psi p) { return p == Psi::Legible ? "psi1" : "psi2"; }

Psi psi_from_string(std::string_view name) {
    if (name == "psi1") return Psi::Legible;
    if (name == "psi2") return Psi::Predictable;
    throw std::invalid_argument("unknown learning strategy '" + std::string(name) + "'");
}

Goal other(Goal g) { return g == Goal::Cup ? Goal::Plate : Goal::Cup; }

std::size_t action_index(const Action& a) {
    return static_cast<std::size_t>(a.toward) * 3 + static_cast<std::size_t>(a.style);
}

Action action_at(std::size_t index) {
    if (index >= kNumActions) throw std::out_of_range("goal action index " + std::to_string(index));
    return Action{static_cast<Goal>(index / 3), static_cast<Style>(index % 3)};
}

const std::array<Action, kNumActions>& all_actions() {
    static const std::array<Action, kNumActions> actions = [] {
        std::array<Action, kNumActions> a{};
        for (std::size_t i = 0; i < kNumActions; ++i) a[i] = action_at(i);
        return a;
    }();
    return actions;
}

std::string to_string(const Action& a) {
    return std::string(to_string(a.style)) + "_" + std::string(to_string(a.toward));
}

const PsiTable& psi_table(Psi psi) {
    static const PsiTable legible{{0.1, 0.3, 0.45}};
    static const PsiTable predictable{{0.35, 0.2, 0.15}};
    return psi == Psi::Legible ? legible : predictable;
}

double psi_likelihood(const Action& a, Goal theta, Psi psi) {
    const PsiTable& table = psi_table(psi);
    if (a.toward == theta) return table.toward[static_cast<std::size_t>(a.style)];
    return table.off_goal_each();
}

double psi_likelihood(std::size_t action, Goal theta, Psi psi) { return psi_likelihood(action_at(action), theta, psi); }

HypothesisGrid<Goal> goal_grid() { return HypothesisGrid<Goal>({Goal::Cup, Goal::Plate}); }
HypothesisGrid<Psi> psi_grid() { return HypothesisGrid<Psi>({Psi::Legible, Psi::Predictable}); }

namespace {

Belief<Goal> noisy_report(Rng& rng, const Belief<Goal>& truth, double noise) {
    if (noise <= 0.0) return truth;
    // Uniform point on the simplex is Dirichlet(1, ..., 1).
    std::vector<double> w(truth.size());
    double total = 0.0;
    for (double& x : w) {
        double u = uniform01(rng);
        while (u <= 0.0) u = uniform01(rng);
        x = -std::log(u);
        total += x;
    }
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = (1.0 - noise) * truth[i] + noise * w[i] / total;
    return Belief<Goal>::from_weights(truth.grid(), std::move(w));
}

}  // namespace

TeachingTrace run_teaching_episode(Rng& rng, const GoalScenario& scenario, Psi psi_star, const Kind& kind,
                                   int timesteps, const teaching::TeacherOptions& opts) {
    if (timesteps < 1) throw std::invalid_argument("run_teaching_episode: need at least one timestep");
    if (scenario.feedback_noise < 0.0 || scenario.feedback_noise > 1.0)
        throw std::invalid_argument("run_teaching_episode: feedback noise must be in [0, 1]");
    const LearningModel model;
    const Workspace x;
    const std::span<const Action> actions(all_actions());
    teaching::Teacher<Psi> teacher(kind, opts);
    teaching::HumanState<Goal> human{scenario.human_prior};
    Belief<Goal> observed = noisy_report(rng, human.belief, scenario.feedback_noise);

    TeachingTrace trace;
    for (int t = 0; t < timesteps; ++t) {
        const std::size_t a = teacher.select(observed, x, actions, model, scenario.theta_star);
        human = teaching::human_update(human, x, actions[a], model, psi_star);
        Belief<Goal> next = noisy_report(rng, human.belief, scenario.feedback_noise);
        teacher.observe(observed, next, x, actions[a], model);
        observed = std::move(next);
        trace.actions.push_back(a);
        trace.b_theta_star.push_back(human.belief.prob(scenario.theta_star));
        trace.b_psi_star.push_back(teacher.psi_belief().prob(psi_star));
    }
    return trace;
}

}  // namespace stratlab::goal

#pragma once

// Teaching a Bayesian human whose learning strategy is uncertain.
//
// A learning model gives π(a | x, θ, ψ): the human's model of the robot's
// policy under learning strategy ψ. The simulated human updates
// b(θ) ∝ b(θ) π(a | x, θ, ψ*) and reports its belief exactly (u = b). The
// robot predicts the human's next state as a ψ-mixture of per-strategy
// Bayesian updates, picks actions greedily on the predicted θ* mass, and
// optionally infers ψ from the reported beliefs.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "stratlab/belief.hpp"

namespace stratlab::teaching {

template <class M, class State, class Action, class Theta, class Psi>
concept LearningModelFor = requires(const M& m, const State& x, const Action& a, const Theta& th, const Psi& ps) {
    { m(x, a, th, ps) } -> std::convertible_to<double>;
};

template <class Theta>
struct HumanState {
    Belief<Theta> belief;
};

// Per-strategy Bayesian update of a human belief; nullopt when Z(ψ) = 0.
template <class Theta, class State, class Action, class Psi, class Model>
std::optional<Belief<Theta>> try_update(const Belief<Theta>& u, const State& x, const Action& a, const Model& model,
                                        const Psi& psi) {
    std::vector<double> w(u.size());
    double z = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0.0) continue;
        w[i] = u[i] * model(x, a, u.grid()[i], psi);
        z += w[i];
    }
    if (!(z > kMinTotalMass)) return std::nullopt;
    return Belief<Theta>::from_weights(u.grid(), std::move(w));
}

template <class Theta, class State, class Action, class Psi, class Model>
    requires LearningModelFor<Model, State, Action, Theta, Psi>
HumanState<Theta> human_update(const HumanState<Theta>& s, const State& x, const Action& a, const Model& model,
                               const Psi& psi_star) {
    return {bayes_update(s.belief, [&](const Theta& th) { return model(x, a, th, psi_star); })};
}

// b̂(θ) = Σ_ψ b(ψ) · u(θ) π(a | x, θ, ψ) / Z(ψ).
template <class Theta, class State, class Action, class Psi, class Model>
    requires LearningModelFor<Model, State, Action, Theta, Psi>
Belief<Theta> predict_state(const Belief<Theta>& u, const State& x, const Action& a, const Model& model,
                            const Belief<Psi>& psi_belief) {
    std::vector<double> mix(u.size(), 0.0);
    for (std::size_t k = 0; k < psi_belief.size(); ++k) {
        if (psi_belief[k] == 0.0) continue;
        const auto updated = try_update(u, x, a, model, psi_belief.grid()[k]);
        if (!updated) throw ContradictoryEvidence("predict_state: Z(psi) = 0 for a strategy with positive belief");
        for (std::size_t i = 0; i < u.size(); ++i) mix[i] += psi_belief[k] * (*updated)[i];
    }
    return Belief<Theta>::from_weights(u.grid(), std::move(mix));
}

// KL(u_t ‖ predicted_ψ) per ψ; infinite where the prediction is undefined.
template <class Theta, class State, class Action, class Psi, class Model>
    requires LearningModelFor<Model, State, Action, Theta, Psi>
std::vector<double> strategy_divergences(const HypothesisGrid<Psi>& psis, const Belief<Theta>& u_prev,
                                         const Belief<Theta>& u_now, const State& x_prev, const Action& a_prev,
                                         const Model& model) {
    std::vector<double> kl(psis.size(), std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < psis.size(); ++k) {
        const auto predicted = try_update(u_prev, x_prev, a_prev, model, psis[k]);
        if (predicted) kl[k] = kl_divergence(u_now, *predicted);
    }
    return kl;
}

// Per-ψ likelihood exp(−β KL(u_t ‖ predicted_ψ)), zero where KL is infinite.
template <class Theta, class State, class Action, class Psi, class Model>
    requires LearningModelFor<Model, State, Action, Theta, Psi>
std::vector<double> strategy_likelihoods(const HypothesisGrid<Psi>& psis, const Belief<Theta>& u_prev,
                                         const Belief<Theta>& u_now, const State& x_prev, const Action& a_prev,
                                         const Model& model, double beta) {
    auto l = strategy_divergences(psis, u_prev, u_now, x_prev, a_prev, model);
    for (double& v : l) v = std::isfinite(v) ? std::exp(-beta * v) : 0.0;
    return l;
}

// The likelihoods are rescaled by exp(β·min KL) first, which leaves the
// posterior unchanged but keeps noisy reports from underflowing.
template <class Theta, class State, class Action, class Psi, class Model>
    requires LearningModelFor<Model, State, Action, Theta, Psi>
Belief<Psi> strategy_update(const Belief<Psi>& psi_belief, const Belief<Theta>& u_prev, const Belief<Theta>& u_now,
                            const State& x_prev, const Action& a_prev, const Model& model, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("strategy_update: beta must be positive");
    auto l = strategy_divergences(psi_belief.grid(), u_prev, u_now, x_prev, a_prev, model);
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < l.size(); ++k)
        if (psi_belief[k] > 0.0) lo = std::min(lo, l[k]);
    for (double& v : l) v = std::isfinite(v) && std::isfinite(lo) ? std::exp(-beta * (v - lo)) : 0.0;
    return bayes_update(psi_belief, std::span<const double>(l));
}

// argmax_a b̂(θ*); ties go to the lowest index.
template <class Theta, class State, class Action, class Psi, class Model>
    requires LearningModelFor<Model, State, Action, Theta, Psi>
std::size_t select_action_greedy(const Belief<Theta>& u, const State& x, std::span<const Action> actions,
                                 const Model& model, const Belief<Psi>& psi_belief, const Theta& theta_star) {
    if (actions.empty()) throw std::invalid_argument("select_action_greedy: empty action set");
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const double score = predict_state(u, x, actions[i], model, psi_belief).prob(theta_star);
        if (score > best_score + 1e-12) {
            best_score = score;
            best = i;
        }
    }
    return best;
}

// Whose response generates the post-observation strategy belief in the
// active-teaching entropy term.
enum class EntropyMode {
    Expected,   // average over hypothesized ψ, weighted by b(ψ)
    WorstCase,  // maximum over hypothesized ψ with b(ψ) > 0
};

// Entropy of b(ψ) after observing the human's response to a, where each
// hypothesized ψ generates a response and `mode` combines the results.
template <class Theta, class State, class Action, class Psi, class Model>
double lookahead_entropy(const Belief<Theta>& u, const State& x, const Action& a, const Model& model,
                         const Belief<Psi>& psi_belief, EntropyMode mode, double beta) {
    double expected = 0.0;
    double worst = 0.0;
    for (std::size_t k = 0; k < psi_belief.size(); ++k) {
        if (psi_belief[k] == 0.0) continue;
        const auto response = try_update(u, x, a, model, psi_belief.grid()[k]);
        if (!response) throw ContradictoryEvidence("lookahead_entropy: Z(psi) = 0 for a strategy with positive belief");
        const double h = entropy(strategy_update(psi_belief, u, *response, x, a, model, beta));
        expected += psi_belief[k] * h;
        worst = std::max(worst, h);
    }
    return mode == EntropyMode::Expected ? expected : worst;
}

// argmax_a { b̂(θ*) − λ H(b'(ψ)) }. λ = 0 is exactly the greedy rule.
template <class Theta, class State, class Action, class Psi, class Model>
    requires LearningModelFor<Model, State, Action, Theta, Psi>
std::size_t select_action_active(const Belief<Theta>& u, const State& x, std::span<const Action> actions,
                                 const Model& model, const Belief<Psi>& psi_belief, const Theta& theta_star,
                                 double lambda, double beta, EntropyMode mode = EntropyMode::Expected) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("select_action_active: lambda must be nonnegative");
    if (lambda == 0.0) return select_action_greedy(u, x, actions, model, psi_belief, theta_star);
    if (actions.empty()) throw std::invalid_argument("select_action_active: empty action set");
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const double gain = predict_state(u, x, actions[i], model, psi_belief).prob(theta_star);
        const double h = lookahead_entropy(u, x, actions[i], model, psi_belief, mode, beta);
        const double score = gain - lambda * h;
        if (score > best_score + 1e-12) {
            best_score = score;
            best = i;
        }
    }
    return best;
}

template <class Psi>
struct FixedPsi {
    Psi psi;
};

template <class Psi>
struct PriorPsi {
    Belief<Psi> prior;
};

template <class Psi>
struct Learn {
    Belief<Psi> prior;
};

template <class Psi>
struct ActiveLearn {
    Belief<Psi> prior;
    double lambda = 0.0;
};

template <class Psi>
using TeacherKind = std::variant<FixedPsi<Psi>, PriorPsi<Psi>, Learn<Psi>, ActiveLearn<Psi>>;

struct TeacherOptions {
    double beta = 20.0;  // KL-likelihood temperature
    EntropyMode entropy_mode = EntropyMode::Expected;
};

// The robot teacher's running strategy belief. FixedPsi is a point mass on a
// singleton grid; only Learn and ActiveLearn update it.
template <class Psi>
class Teacher {
public:
    explicit Teacher(const TeacherKind<Psi>& kind, TeacherOptions opts = {})
        : psi_belief_(initial_belief(kind)), opts_(opts) {
        if (const auto* a = std::get_if<ActiveLearn<Psi>>(&kind)) {
            if (!(a->lambda >= 0.0)) throw std::invalid_argument("ActiveLearn: lambda must be nonnegative");
            lambda_ = a->lambda;
            updates_ = true;
        } else if (std::holds_alternative<Learn<Psi>>(kind)) {
            updates_ = true;
        }
    }

    const Belief<Psi>& psi_belief() const { return psi_belief_; }
    bool updates() const { return updates_; }
    double lambda() const { return lambda_; }

    template <class Theta, class State, class Action, class Model>
    std::size_t select(const Belief<Theta>& u, const State& x, std::span<const Action> actions, const Model& model,
                       const Theta& theta_star) const {
        return select_action_active(u, x, actions, model, psi_belief_, theta_star, lambda_, opts_.beta,
                                    opts_.entropy_mode);
    }

    template <class Theta, class State, class Action, class Model>
    void observe(const Belief<Theta>& u_prev, const Belief<Theta>& u_now, const State& x_prev, const Action& a_prev,
                 const Model& model) {
        if (!updates_) return;
        psi_belief_ = strategy_update(psi_belief_, u_prev, u_now, x_prev, a_prev, model, opts_.beta);
    }

private:
    static Belief<Psi> initial_belief(const TeacherKind<Psi>& kind) {
        return std::visit(
            [](const auto& k) -> Belief<Psi> {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, FixedPsi<Psi>>) {
                    return Belief<Psi>::point_mass(HypothesisGrid<Psi>({k.psi}), std::size_t{0});
                } else {
                    return k.prior;
                }
            },
            kind);
    }

    Belief<Psi> psi_belief_;
    TeacherOptions opts_;
    double lambda_ = 0.0;
    bool updates_ = false;
};

}  // namespace stratlab::teaching

#pragma once

// Learning from a human teacher whose teaching strategy is uncertain.
//
// A teaching model gives π(u | x, θ, φ): the probability that a human with
// target model θ and teaching strategy φ takes action u in world state x.
// Three observation models are provided:
//
//   fixed          P(u | x; θ) = π(u | x, θ, φ₀)
//   prior mixture  P(u | x; θ) = Σ_φ π(u | x, θ, φ) b⁰(φ)     (b⁰ never updated)
//   joint          b(θ, φ) ∝ b(θ, φ) π(u | x, θ, φ)
//
// The joint learner's θ-marginal is the mixture model evaluated with the
// running conditional b(φ | θ) instead of the fixed prior.

#include <concepts>
#include <functional>
#include <utility>
#include <variant>

#include "stratlab/belief.hpp"

namespace stratlab::learning {

template <class M, class State, class Action, class Theta, class Phi>
concept TeachingModelFor = requires(const M& m, const State& x, const Action& u, const Theta& th, const Phi& ph) {
    { m(x, u, th, ph) } -> std::convertible_to<double>;
};

// Type-erased teaching model, for storing heterogeneous models.
template <class State, class Action, class Theta, class Phi>
using TeachingModel = std::function<double(const State&, const Action&, const Theta&, const Phi&)>;

template <class Theta, class State, class Action, class Phi, class Model>
    requires TeachingModelFor<Model, State, Action, Theta, Phi>
Belief<Theta> observe_fixed(const Belief<Theta>& b, const State& x, const Action& u, const Model& model,
                            const Phi& phi0) {
    return bayes_update(b, [&](const Theta& th) { return model(x, u, th, phi0); });
}

template <class Theta, class State, class Action, class Phi, class Model>
    requires TeachingModelFor<Model, State, Action, Theta, Phi>
double mixture_likelihood(const State& x, const Action& u, const Theta& th, const Model& model,
                          const Belief<Phi>& phi_belief) {
    double l = 0.0;
    for (std::size_t k = 0; k < phi_belief.size(); ++k) {
        if (phi_belief[k] == 0.0) continue;
        l += model(x, u, th, phi_belief.grid()[k]) * phi_belief[k];
    }
    return l;
}

template <class Theta, class State, class Action, class Phi, class Model>
    requires TeachingModelFor<Model, State, Action, Theta, Phi>
Belief<Theta> observe_prior_mixture(const Belief<Theta>& b, const State& x, const Action& u, const Model& model,
                                    const Belief<Phi>& phi_prior) {
    return bayes_update(b, [&](const Theta& th) { return mixture_likelihood(x, u, th, model, phi_prior); });
}

template <class Theta, class Phi, class State, class Action, class Model>
    requires TeachingModelFor<Model, State, Action, Theta, Phi>
Belief<std::pair<Theta, Phi>> observe_joint(const Belief<std::pair<Theta, Phi>>& b, const State& x,
                                            const Action& u, const Model& model) {
    return bayes_update(b, [&](const std::pair<Theta, Phi>& h) { return model(x, u, h.first, h.second); });
}

template <class Phi>
struct Fixed {
    Phi phi;
};

template <class Phi>
struct PriorMixture {
    Belief<Phi> phi_prior;
};

template <class Theta, class Phi>
struct Joint {
    Belief<std::pair<Theta, Phi>> prior;
};

template <class Theta, class Phi>
using LearnerKind = std::variant<Fixed<Phi>, PriorMixture<Phi>, Joint<Theta, Phi>>;

// Independent joint prior b⁰(θ) ⊗ b⁰(φ).
template <class Theta, class Phi>
Joint<Theta, Phi> joint_from_priors(const Belief<Theta>& theta_prior, const Belief<Phi>& phi_prior) {
    return Joint<Theta, Phi>{product(theta_prior, phi_prior)};
}

// A learner's running belief, threaded by value through a stream of
// observations. Fixed and PriorMixture start from `theta_prior`; Joint
// carries its own joint prior.
template <class Theta, class Phi>
class Learner {
public:
    Learner(const LearnerKind<Theta, Phi>& kind, const Belief<Theta>& theta_prior)
        : kind_(kind), state_(initial_state(kind, theta_prior)) {}

    const LearnerKind<Theta, Phi>& kind() const { return kind_; }
    bool is_joint() const { return std::holds_alternative<Belief<std::pair<Theta, Phi>>>(state_); }

    template <class State, class Action, class Model>
        requires TeachingModelFor<Model, State, Action, Theta, Phi>
    Learner observe(const State& x, const Action& u, const Model& model) const {
        Learner next = *this;
        std::visit(
            [&](const auto& k) {
                using K = std::decay_t<decltype(k)>;
                if constexpr (std::is_same_v<K, Fixed<Phi>>) {
                    next.state_ = observe_fixed(std::get<Belief<Theta>>(state_), x, u, model, k.phi);
                } else if constexpr (std::is_same_v<K, PriorMixture<Phi>>) {
                    next.state_ = observe_prior_mixture(std::get<Belief<Theta>>(state_), x, u, model, k.phi_prior);
                } else {
                    next.state_ = observe_joint(std::get<Belief<std::pair<Theta, Phi>>>(state_), x, u, model);
                }
            },
            kind_);
        return next;
    }

    Belief<Theta> theta_belief() const {
        if (const auto* b = std::get_if<Belief<Theta>>(&state_)) return *b;
        return marginalize<0>(std::get<Belief<std::pair<Theta, Phi>>>(state_));
    }

    // Only available for the joint learner.
    const Belief<std::pair<Theta, Phi>>& joint_belief() const {
        return std::get<Belief<std::pair<Theta, Phi>>>(state_);
    }

private:
    using StateBelief = std::variant<Belief<Theta>, Belief<std::pair<Theta, Phi>>>;

    static StateBelief initial_state(const LearnerKind<Theta, Phi>& kind, const Belief<Theta>& theta_prior) {
        if (const auto* j = std::get_if<Joint<Theta, Phi>>(&kind)) {
            product_layout(j->prior.grid());
            return j->prior;
        }
        return theta_prior;
    }

    LearnerKind<Theta, Phi> kind_;
    StateBelief state_;
};

}  // namespace stratlab::learning

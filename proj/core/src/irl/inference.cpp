#include "stratlab/irl/inference.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "stratlab/irl/planning.hpp"

namespace stratlab::irl {

std::string_view to_string(Learner l) {
    switch (l) {
        case Learner::Oracle: return "oracle";
        case Learner::PhiMinusOne: return "phi_minus1";
        case Learner::PhiPlusOne: return "phi_plus1";
        case Learner::Joint: return "joint";
    }
    return "?";
}

Learner learner_from_string(std::string_view name) {
    for (Learner l : kAllLearners)
        if (to_string(l) == name) return l;
    throw std::invalid_argument("unknown irl learner '" + std::string(name) + "'");
}

std::string_view to_string(Proposal p) { return p == Proposal::Full ? "full" : "coordinate"; }

Proposal proposal_from_string(std::string_view name) {
    if (name == "full") return Proposal::Full;
    if (name == "coordinate") return Proposal::Coordinate;
    throw std::invalid_argument("unknown proposal '" + std::string(name) + "'");
}

PhiModel phi_model_for(Learner learner, double phi_star) {
    switch (learner) {
        case Learner::Oracle: return PhiFixed{phi_star};
        case Learner::PhiMinusOne: return PhiFixed{-1.0};
        case Learner::PhiPlusOne: return PhiFixed{1.0};
        case Learner::Joint: return PhiInferred{};
    }
    throw std::invalid_argument("phi_model_for: unknown learner");
}

double reflect(double x, double bound) {
    const double period = 4.0 * bound;
    double y = std::fmod(x + bound, period);
    if (y < 0.0) y += period;
    // y in [0, 4b): rising on [0, 2b], falling on [2b, 4b).
    return (y <= 2.0 * bound ? y : period - y) - bound;
}

namespace {

// Evaluates the demonstration log-likelihood, reusing the previous optimal
// policy as a warm start for planning. Since R(x) is shared by all moves out
// of x, the logit of move u reduces to α(γ V(x') + φ R(x')).
class DensityEvaluator {
public:
    DensityEvaluator(const Gridworld& world, const Demonstration& demo, double alpha)
        : world_(world), demo_(demo), alpha_(alpha), rewards_(world.num_states()), w_(world.num_states()) {
        if (demo.actions.size() != static_cast<std::size_t>(world.num_states()))
            throw std::invalid_argument("infer_joint: demonstration does not label every state");
        for (int a : demo.actions)
            if (a < 0 || a >= kNumMoves) throw std::invalid_argument("infer_joint: invalid demonstrated move");
        if (!(alpha > 0.0)) throw std::invalid_argument("infer_joint: alpha must be positive");
    }

    double operator()(std::span<const double> theta, double phi) {
        world_.rewards(theta, rewards_);
        Solution sol = policy_iteration(world_, rewards_, warm_);
        warm_ = std::move(sol.policy);
        const double g = world_.gamma();
        for (int s = 0; s < world_.num_states(); ++s) w_[s] = alpha_ * (g * sol.value[s] + phi * rewards_[s]);
        double ll = 0.0;
        for (int s = 0; s < world_.num_states(); ++s) {
            double z[kNumMoves];
            double m = -INFINITY;
            for (int u = 0; u < kNumMoves; ++u) {
                z[u] = w_[world_.next(s, u)];
                m = std::max(m, z[u]);
            }
            double total = 0.0;
            for (double v : z) total += std::exp(v - m);
            ll += z[demo_.actions[s]] - m - std::log(total);
        }
        return ll;
    }

private:
    const Gridworld& world_;
    const Demonstration& demo_;
    double alpha_;
    std::vector<double> rewards_;
    std::vector<double> w_;
    std::vector<int> warm_;
};

bool in_box(std::span<const double> theta, double phi, double bound) {
    for (double v : theta)
        if (!(std::abs(v) <= bound)) return false;
    return std::abs(phi) <= bound;
}

}  // namespace

double log_target(const Gridworld& world, const Demonstration& demo, double alpha, std::span<const double> theta,
                  double phi, double bound) {
    if (!in_box(theta, phi, bound)) return -INFINITY;
    DensityEvaluator eval(world, demo, alpha);
    return eval(theta, phi);
}

JointPosterior infer_joint(Rng& rng, const Gridworld& world, const Demonstration& demo, double alpha,
                           const PhiModel& phi_model, const McmcOptions& opts) {
    if (opts.samples < 1 || opts.burn_in < 0 || opts.init_draws < 0) throw std::invalid_argument("infer_joint: invalid sample counts");
    if (!(opts.step > 0.0) || !(opts.bound > 0.0)) throw std::invalid_argument("infer_joint: invalid proposal");
    const int nf = world.num_features();
    const bool infer_phi = std::holds_alternative<PhiInferred>(phi_model);
    double phi = infer_phi ? 0.0 : std::get<PhiFixed>(phi_model).phi;
    if (!infer_phi && !(std::abs(phi) <= opts.bound))
        throw std::invalid_argument("infer_joint: fixed phi outside the box");

    DensityEvaluator density(world, demo, alpha);
    std::vector<double> theta(nf, 0.0);
    std::vector<double> proposal(nf);
    double ll = density(theta, phi);
    if (!std::isfinite(ll)) throw std::domain_error("infer_joint: non-finite density at the initial point");
    // Start from the densest of the origin and init_draws prior draws.
    for (int d = 0; d < opts.init_draws; ++d) {
        for (double& v : proposal) v = uniform(rng, -opts.bound, opts.bound);
        const double phi_draw = infer_phi ? uniform(rng, -opts.bound, opts.bound) : phi;
        const double ll_draw = density(proposal, phi_draw);
        if (std::isnan(ll_draw)) throw std::domain_error("infer_joint: non-finite density");
        if (ll_draw > ll) {
            theta = proposal;
            phi = phi_draw;
            ll = ll_draw;
        }
    }

    JointPosterior post;
    post.num_features = nf;
    post.samples.reserve(static_cast<std::size_t>(opts.samples) * (nf + 1));
    post.theta_mean.assign(nf, 0.0);
    long accepted = 0;
    const int total = opts.burn_in + opts.samples;
    for (int it = 0; it < total; ++it) {
        double phi_prop = phi;
        if (opts.proposal == Proposal::Full) {
            for (int k = 0; k < nf; ++k) proposal[k] = reflect(theta[k] + opts.step * standard_normal(rng), opts.bound);
            if (infer_phi) phi_prop = reflect(phi + opts.step * standard_normal(rng), opts.bound);
        } else {
            proposal = theta;
            const int k = static_cast<int>(uniform_int(rng, 0, infer_phi ? nf : nf - 1));
            if (k == nf) phi_prop = reflect(phi + opts.step * standard_normal(rng), opts.bound);
            else proposal[k] = reflect(theta[k] + opts.step * standard_normal(rng), opts.bound);
        }
        const double ll_prop = density(proposal, phi_prop);
        if (std::isnan(ll_prop)) throw std::domain_error("infer_joint: non-finite density");
        const double log_u = std::log(uniform01(rng));
        if (log_u < ll_prop - ll) {
            theta.swap(proposal);
            phi = phi_prop;
            ll = ll_prop;
            ++accepted;
        }
        if (it >= opts.burn_in) {
            post.samples.insert(post.samples.end(), theta.begin(), theta.end());
            post.samples.push_back(phi);
            for (int k = 0; k < nf; ++k) post.theta_mean[k] += theta[k];
            post.phi_mean += phi;
        }
    }
    for (double& m : post.theta_mean) m /= opts.samples;
    post.phi_mean /= opts.samples;
    post.acceptance_rate = static_cast<double>(accepted) / total;
    return post;
}

}  // namespace stratlab::irl

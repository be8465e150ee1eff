#include "stratlab/sorting_world.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stratlab::sorting {

std::string_view to_string(Strategy s) { return s == Strategy::Phi1 ? "phi1" : "phi2"; }

Strategy strategy_from_string(std::string_view name) {
    if (name == "phi1") return Strategy::Phi1;
    if (name == "phi2") return Strategy::Phi2;
    throw std::invalid_argument("unknown sorting strategy '" + std::string(name) + "'");
}

SortingTask::SortingTask(std::vector<int> lengths, int theta_star)
    : lengths_(std::move(lengths)), theta_star_(theta_star) {
    if (lengths_.empty()) throw std::invalid_argument("SortingTask: no screws");
    std::vector<int> sorted = lengths_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("SortingTask: screw lengths must be distinct");
    if (sorted.front() > theta_star_ || sorted.back() <= theta_star_)
        throw std::invalid_argument("SortingTask: need at least one short and one long screw");
}

SortingTask SortingTask::standard(int theta_star) {
    std::vector<int> lengths(kNumScrews);
    std::iota(lengths.begin(), lengths.end(), 1);
    return SortingTask(std::move(lengths), theta_star);
}

HypothesisGrid<int> boundary_grid() {
    std::vector<int> pts(kNumScrews - 1);
    std::iota(pts.begin(), pts.end(), 1);
    return HypothesisGrid<int>(std::move(pts));
}

HypothesisGrid<Strategy> strategy_grid() { return HypothesisGrid<Strategy>({Strategy::Phi1, Strategy::Phi2}); }

namespace {

double raw_weight(int length, int theta, Strategy phi, const TeacherOptions& opts) {
    if (phi == Strategy::Phi1) {
        if (opts.phi1_short_only && length > theta) return 0.0;
        return std::exp(-0.5 * std::abs(theta - length));
    }
    return length <= theta ? 0.9 : 0.1;
}

}  // namespace

double teacher_likelihood(std::span<const int> lengths, int u, int theta, Strategy phi, const TeacherOptions& opts) {
    if (std::find(lengths.begin(), lengths.end(), u) == lengths.end())
        throw std::invalid_argument("teacher_likelihood: indicated screw " + std::to_string(u) + " is not in the task");
    double total = 0.0;
    for (int len : lengths) total += raw_weight(len, theta, phi, opts);
    if (total <= 0.0) return 0.0;
    return raw_weight(u, theta, phi, opts) / total;
}

int sample_teacher_action(Rng& rng, std::span<const int> lengths, int theta_star, Strategy phi,
                          const TeacherOptions& opts) {
    std::vector<double> w(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) w[i] = raw_weight(lengths[i], theta_star, phi, opts);
    return lengths[sample_categorical(rng, w)];
}

Classification classify(const Belief<int>& b, std::span<const int> lengths) {
    Classification c;
    c.is_short.reserve(lengths.size());
    for (int len : lengths) {
        double p_short = 0.0;
        for (std::size_t i = 0; i < b.size(); ++i)
            if (b.grid()[i] >= len) p_short += b[i];
        const bool label = p_short > 0.5;
        c.is_short.push_back(label);
        c.expected_correct += label ? p_short : 1.0 - p_short;
    }
    return c;
}

int count_errors(const Classification& c, const SortingTask& task) {
    int errors = 0;
    for (std::size_t i = 0; i < task.lengths().size(); ++i)
        if (c.is_short[i] != task.is_short(task.lengths()[i])) ++errors;
    return errors;
}

EpisodeTrace run_episode_stream(Rng& rng, const SortingTask& task, Strategy phi_star, const Kind& learner,
                                int timesteps, const Belief<int>& theta_prior, const TeacherOptions& opts) {
    if (timesteps < 1) throw std::invalid_argument("run_episode_stream: need at least one timestep");
    const TeacherModel model{opts};
    learning::Learner<int, Strategy> state(learner, theta_prior);
    EpisodeTrace trace;
    trace.actions.reserve(timesteps);
    trace.errors.reserve(timesteps);
    for (int t = 0; t < timesteps; ++t) {
        const int u = sample_teacher_action(rng, task.lengths(), task.theta_star(), phi_star, opts);
        // A learner whose model rules out u entirely cannot update on it; it
        // keeps its belief rather than ending the episode.
        try {
            state = state.observe(task.lengths(), u, model);
        } catch (const ContradictoryEvidence&) {
        }
        trace.actions.push_back(u);
        trace.errors.push_back(count_errors(classify(state.theta_belief(), task.lengths()), task));
    }
    return trace;
}

}  // namespace stratlab::sorting

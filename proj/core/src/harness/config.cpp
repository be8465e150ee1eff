#include "stratlab/harness/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <stdexcept>

namespace stratlab::harness {

using nlohmann::json;

std::string_view to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Sorting: return "sorting";
        case ExperimentKind::GoalTeaching: return "goal_teaching";
        case ExperimentKind::Irl: return "irl";
        case ExperimentKind::IrlNoise: return "irl_noise";
    }
    return "?";
}

ExperimentKind experiment_from_string(std::string_view name) {
    for (auto k : {ExperimentKind::Sorting, ExperimentKind::GoalTeaching, ExperimentKind::Irl, ExperimentKind::IrlNoise})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown experiment '" + std::string(name) +
                                "' (expected sorting, goal_teaching, irl or irl_noise)");
}

const std::vector<std::string>& known_learners(ExperimentKind kind) {
    static const std::vector<std::string> sorting{"fixed_phi1", "fixed_phi2", "prior", "joint", "oracle"};
    static const std::vector<std::string> teaching{"fixed_psi1", "fixed_psi2", "prior", "learn", "active", "oracle"};
    static const std::vector<std::string> irl{"oracle", "phi_minus1", "phi_plus1", "joint"};
    switch (kind) {
        case ExperimentKind::Sorting: return sorting;
        case ExperimentKind::GoalTeaching: return teaching;
        default: return irl;
    }
}

ExperimentConfig default_config(ExperimentKind kind) {
    ExperimentConfig c;
    c.experiment = kind;
    c.learners = known_learners(kind);
    switch (kind) {
        case ExperimentKind::Sorting:
        case ExperimentKind::GoalTeaching:
            c.population = 10000;
            c.timesteps = 10;
            break;
        case ExperimentKind::Irl:
            c.population = 100;
            c.timesteps = 1;
            break;
        case ExperimentKind::IrlNoise:
            c.population = 100;
            c.timesteps = 1;
            c.irl.features = {8};
            c.irl.alphas = {10.0};
            c.irl.noise_ratios = {0.0, 0.1, 0.2, 0.3};
            break;
    }
    return c;
}

namespace {

void check_probability(double p, const std::string& what) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument(what + " must be a probability in [0, 1]");
}

void check_distribution(const std::vector<double>& p, const std::string& what) {
    if (p.size() != 2) throw std::invalid_argument(what + " must list exactly two probabilities");
    double total = 0.0;
    for (double v : p) {
        check_probability(v, what + " entry");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::invalid_argument(what + " must sum to 1");
}

std::string_view to_string(teaching::EntropyMode m) {
    return m == teaching::EntropyMode::Expected ? "expected" : "worst_case";
}

teaching::EntropyMode entropy_mode_from_string(std::string_view s) {
    if (s == "expected") return teaching::EntropyMode::Expected;
    if (s == "worst_case") return teaching::EntropyMode::WorstCase;
    throw std::invalid_argument("unknown entropy_mode '" + std::string(s) + "' (expected or worst_case)");
}

// Reads object keys into fields, rejecting anything not consumed.
class Reader {
public:
    Reader(const json& j, std::string scope) : j_(j), scope_(std::move(scope)) {
        if (!j.is_object()) throw std::invalid_argument(scope_ + ": expected an object");
    }

    template <class T>
    void get(const char* key, T& out) {
        seen_.insert(key);
        if (!j_.contains(key)) return;
        try {
            out = j_.at(key).get<T>();
        } catch (const json::exception& e) {
            throw std::invalid_argument(scope_ + "." + key + ": " + e.what());
        }
    }

    const json* child(const char* key) {
        seen_.insert(key);
        return j_.contains(key) ? &j_.at(key) : nullptr;
    }

    void finish() const {
        for (const auto& [k, v] : j_.items())
            if (!seen_.count(k)) throw std::invalid_argument(scope_ + ": unknown key '" + k + "'");
    }

private:
    const json& j_;
    std::string scope_;
    std::set<std::string> seen_;
};

}  // namespace

void validate(const ExperimentConfig& c) {
    if (c.population < 1) throw std::invalid_argument("population must be at least 1");
    if (c.timesteps < 1) throw std::invalid_argument("timesteps must be at least 1");
    if (c.threads < 1) throw std::invalid_argument("threads must be at least 1");
    if (c.output_dir.empty()) throw std::invalid_argument("output_dir must not be empty");
    if (c.learners.empty()) throw std::invalid_argument("learners must not be empty");
    const auto& known = known_learners(c.experiment);
    std::set<std::string> unique;
    for (const auto& l : c.learners) {
        if (std::find(known.begin(), known.end(), l) == known.end())
            throw std::invalid_argument("learner '" + l + "' does not exist for experiment " +
                                        std::string(to_string(c.experiment)));
        if (!unique.insert(l).second) throw std::invalid_argument("learner '" + l + "' listed twice");
    }
    check_probability(c.sorting.p_phi1, "sorting.p_phi1");
    check_distribution(c.sorting.phi_prior, "sorting.phi_prior");
    check_probability(c.teaching.p_psi1, "teaching.p_psi1");
    check_distribution(c.teaching.psi_prior, "teaching.psi_prior");
    if (!(c.teaching.beta > 0.0)) throw std::invalid_argument("teaching.beta must be positive");
    if (!(c.teaching.lambda >= 0.0)) throw std::invalid_argument("teaching.lambda must be nonnegative");
    check_probability(c.teaching.feedback_noise, "teaching.feedback_noise");
    const auto& irl = c.irl;
    if (irl.features.empty() || irl.alphas.empty() || irl.noise_ratios.empty())
        throw std::invalid_argument("irl.features, irl.alphas and irl.noise_ratios must be non-empty");
    for (int f : irl.features)
        if (f < 1) throw std::invalid_argument("irl.features entries must be positive");
    for (double a : irl.alphas)
        if (!(a > 0.0)) throw std::invalid_argument("irl.alphas entries must be positive");
    for (double r : irl.noise_ratios) check_probability(r, "irl.noise_ratios entry");
    if (irl.width < 1 || irl.height < 1 || irl.width * irl.height < 2)
        throw std::invalid_argument("irl grid must have at least two states");
    if (!(irl.gamma >= 0.0 && irl.gamma < 1.0)) throw std::invalid_argument("irl.gamma must be in [0, 1)");
    if (irl.mcmc_samples < 1 || irl.mcmc_burn_in < 0 || irl.mcmc_init_draws < 0) throw std::invalid_argument("irl MCMC sample counts are invalid");
    if (!(irl.mcmc_step > 0.0)) throw std::invalid_argument("irl.mcmc_step must be positive");
}

ExperimentConfig config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("experiment"))
        throw std::invalid_argument("config: missing required key 'experiment'");
    ExperimentConfig c = default_config(experiment_from_string(j.at("experiment").get<std::string>()));
    Reader top(j, "config");
    std::string experiment;
    top.get("experiment", experiment);
    top.get("population", c.population);
    top.get("timesteps", c.timesteps);
    top.get("learners", c.learners);
    top.get("seed", c.seed);
    top.get("output_dir", c.output_dir);
    top.get("threads", c.threads);
    if (const json* s = top.child("sorting")) {
        Reader r(*s, "sorting");
        r.get("p_phi1", c.sorting.p_phi1);
        r.get("phi_prior", c.sorting.phi_prior);
        r.get("phi1_short_only", c.sorting.phi1_short_only);
        r.finish();
    }
    if (const json* t = top.child("teaching")) {
        Reader r(*t, "teaching");
        r.get("p_psi1", c.teaching.p_psi1);
        r.get("psi_prior", c.teaching.psi_prior);
        r.get("beta", c.teaching.beta);
        r.get("lambda", c.teaching.lambda);
        std::string mode(to_string(c.teaching.entropy_mode));
        r.get("entropy_mode", mode);
        c.teaching.entropy_mode = entropy_mode_from_string(mode);
        r.get("feedback_noise", c.teaching.feedback_noise);
        r.finish();
    }
    if (const json* i = top.child("irl")) {
        Reader r(*i, "irl");
        r.get("features", c.irl.features);
        r.get("alphas", c.irl.alphas);
        r.get("noise_ratios", c.irl.noise_ratios);
        r.get("width", c.irl.width);
        r.get("height", c.irl.height);
        r.get("gamma", c.irl.gamma);
        r.get("mcmc_samples", c.irl.mcmc_samples);
        r.get("mcmc_burn_in", c.irl.mcmc_burn_in);
        r.get("mcmc_step", c.irl.mcmc_step);
        r.get("mcmc_init_draws", c.irl.mcmc_init_draws);
        std::string proposal(irl::to_string(c.irl.mcmc_proposal));
        r.get("mcmc_proposal", proposal);
        c.irl.mcmc_proposal = irl::proposal_from_string(proposal);
        r.get("dump_worlds", c.irl.dump_worlds);
        r.get("record_timing", c.irl.record_timing);
        r.finish();
    }
    top.finish();
    validate(c);
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    return json{
        {"experiment", to_string(c.experiment)},
        {"population", c.population},
        {"timesteps", c.timesteps},
        {"learners", c.learners},
        {"seed", c.seed},
        {"output_dir", c.output_dir},
        {"threads", c.threads},
        {"sorting",
         {{"p_phi1", c.sorting.p_phi1}, {"phi_prior", c.sorting.phi_prior}, {"phi1_short_only", c.sorting.phi1_short_only}}},
        {"teaching",
         {{"p_psi1", c.teaching.p_psi1},
          {"psi_prior", c.teaching.psi_prior},
          {"beta", c.teaching.beta},
          {"lambda", c.teaching.lambda},
          {"entropy_mode", to_string(c.teaching.entropy_mode)},
          {"feedback_noise", c.teaching.feedback_noise}}},
        {"irl",
         {{"features", c.irl.features},
          {"alphas", c.irl.alphas},
          {"noise_ratios", c.irl.noise_ratios},
          {"width", c.irl.width},
          {"height", c.irl.height},
          {"gamma", c.irl.gamma},
          {"mcmc_samples", c.irl.mcmc_samples},
          {"mcmc_burn_in", c.irl.mcmc_burn_in},
          {"mcmc_step", c.irl.mcmc_step},
          {"mcmc_init_draws", c.irl.mcmc_init_draws},
          {"mcmc_proposal", irl::to_string(c.irl.mcmc_proposal)},
          {"dump_worlds", c.irl.dump_worlds},
          {"record_timing", c.irl.record_timing}}},
    };
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config '" + path.string() + "': " + e.what());
    }
    return config_from_json(j);
}

}  // namespace stratlab::harness

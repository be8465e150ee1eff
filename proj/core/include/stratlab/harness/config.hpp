#pragma once

// Experiment configuration, stored as a JSON document. Every key is optional
// and falls back to the defaults of the chosen experiment; unknown keys are
// rejected. See docs/config.md for the grammar.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stratlab/irl/inference.hpp"
#include "stratlab/teaching.hpp"

namespace stratlab::harness {

enum class ExperimentKind { Sorting, GoalTeaching, Irl, IrlNoise };

std::string_view to_string(ExperimentKind k);
ExperimentKind experiment_from_string(std::string_view name);

struct SortingSettings {
    double p_phi1 = 0.5;                     // fraction of users teaching with φ₁
    std::vector<double> phi_prior{0.5, 0.5}; // robot prior over (φ₁, φ₂)
    bool phi1_short_only = true;

    friend bool operator==(const SortingSettings&, const SortingSettings&) = default;
};

struct TeachingSettings {
    double p_psi1 = 0.5;                     // fraction of users learning with ψ₁
    std::vector<double> psi_prior{0.5, 0.5}; // robot prior over (ψ₁, ψ₂)
    double beta = 20.0;
    double lambda = 0.1;                     // active teacher's entropy weight
    teaching::EntropyMode entropy_mode = teaching::EntropyMode::Expected;
    double feedback_noise = 0.0;

    friend bool operator==(const TeachingSettings&, const TeachingSettings&) = default;
};

struct IrlSettings {
    std::vector<int> features{4, 8, 16};
    std::vector<double> alphas{5.0, 10.0, 20.0};
    std::vector<double> noise_ratios{0.0};
    int width = 8;
    int height = 8;
    double gamma = 0.9;
    int mcmc_samples = 4000;
    int mcmc_burn_in = 1000;
    double mcmc_step = 0.1;
    int mcmc_init_draws = 64;  // prior draws screened for each chain's start
    irl::Proposal mcmc_proposal = irl::Proposal::Full;
    bool dump_worlds = false;
    bool record_timing = false;

    irl::McmcOptions mcmc() const { return {mcmc_samples, mcmc_burn_in, mcmc_step, 1.0, mcmc_init_draws, mcmc_proposal}; }
    friend bool operator==(const IrlSettings&, const IrlSettings&) = default;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::Sorting;
    int population = 10000;
    int timesteps = 10;
    std::vector<std::string> learners;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    int threads = 1;
    SortingSettings sorting;
    TeachingSettings teaching;
    IrlSettings irl;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Defaults per experiment: 10⁴ users and T = 10 for the didactic worlds,
// 100 users per cell for the IRL grids.
ExperimentConfig default_config(ExperimentKind kind);

// Learner or teacher names accepted by each experiment.
const std::vector<std::string>& known_learners(ExperimentKind kind);

// Throws std::invalid_argument describing the first violated constraint.
void validate(const ExperimentConfig& config);

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace stratlab::harness

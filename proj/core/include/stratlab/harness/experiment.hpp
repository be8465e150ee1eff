#pragma once

// Population sweeps over simulated users.
//
// Seeding: user i of a population draws from make_rng(S, i), where S is the
// master seed for the didactic worlds and, for the IRL grids,
// S = derive_seed(derive_seed(master, |F|), bits(α)). The noise ratio is not
// part of S, so every ρ level sees the same worlds, θ*, φ* and MCMC streams.
// Inside a user, stream 0 draws the user (θ*, φ*, world), stream 1 the
// human's actions, and stream 2 + k the k-th IRL learner's chain. All streams
// are fixed before dispatch, so outputs do not depend on the thread count.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "stratlab/harness/config.hpp"
#include "stratlab/harness/csv.hpp"
#include "stratlab/irl/demonstration.hpp"
#include "stratlab/irl/gridworld.hpp"

namespace stratlab::harness {

// Raw CSV headers.
const std::vector<std::string>& sorting_header();
const std::vector<std::string>& teaching_header();
const std::vector<std::string>& irl_header();

// Runs body(i) for i in [0, n) on `threads` workers; rethrows the first
// exception after all workers stop.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

struct IrlUser {
    std::uint64_t seed = 0;
    int user_id = 0;
    irl::Gridworld world;
    irl::DemonstratorParams params;
};

std::uint64_t irl_cell_seed(std::uint64_t master, int num_features, double alpha);

// Draws the world, θ* ~ U[−1, 1]^|F| and φ* ~ U[−1, 1] from stream 0 of `seed`.
IrlUser make_irl_user(std::uint64_t seed, int user_id, int num_features, double alpha, double noise_ratio,
                      const IrlSettings& settings);

// Demonstration (stream 1), then one MCMC posterior per learner; one raw row each.
std::vector<std::vector<std::string>> run_irl_user(const IrlUser& user, const std::vector<std::string>& learners,
                                                   const IrlSettings& settings);

// Raw results as an in-memory table, rows ordered by cell, user, learner, t.
CsvTable simulate(const ExperimentConfig& config);

struct RunOutputs {
    std::filesystem::path raw;
    std::filesystem::path summary;
    std::filesystem::path welch;
    std::filesystem::path config;
};

// Simulates, then writes raw.csv, summary.csv, welch.csv and the resolved
// config.json into config.output_dir (plus worlds/ when irl.dump_worlds).
RunOutputs run_experiment(const ExperimentConfig& config);

}  // namespace stratlab::harness

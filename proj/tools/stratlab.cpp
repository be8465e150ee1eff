#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "stratlab/harness/config.hpp"
#include "stratlab/harness/csv.hpp"
#include "stratlab/harness/experiment.hpp"
#include "stratlab/harness/replay.hpp"
#include "stratlab/harness/summary.hpp"

namespace sh = stratlab::harness;

namespace {

struct RunArgs {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> population;
    std::optional<std::string> out;
    std::optional<int> threads;
};

int run(const RunArgs& a) {
    auto config = sh::load_config(a.config);
    if (a.seed) config.seed = *a.seed;
    if (a.population) config.population = *a.population;
    if (a.out) config.output_dir = *a.out;
    if (a.threads) config.threads = *a.threads;
    sh::validate(config);
    const auto files = sh::run_experiment(config);
    std::cout << "wrote " << files.raw.string() << ", " << files.summary.string() << ", " << files.welch.string()
              << "\n";
    return 0;
}

int summarize(const std::string& raw_path, const std::string& out_dir) {
    const auto summary = sh::summarize(sh::read_csv(raw_path));
    const auto table = sh::summary_table(summary);
    if (out_dir.empty()) {
        std::cout << table.to_string();
        return 0;
    }
    const std::filesystem::path dir(out_dir);
    sh::write_file_atomic(dir / "summary.csv", table.to_string());
    sh::write_file_atomic(dir / "welch.csv", sh::welch_table(summary).to_string());
    std::cout << "wrote " << (dir / "summary.csv").string() << ", " << (dir / "welch.csv").string() << "\n";
    return 0;
}

int replay(const std::string& world_path, const std::vector<std::string>& learners) {
    std::ifstream in(world_path);
    if (!in) throw std::runtime_error("cannot open '" + world_path + "'");
    nlohmann::json record;
    try {
        in >> record;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(world_path + ": " + e.what());
    }
    std::cout << sh::replay(record, learners).to_string();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulated teaching and learning experiments"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "Run an experiment config and write raw/summary CSVs");
    run_cmd->add_option("config", run_args.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--seed", run_args.seed, "Override the master seed");
    run_cmd->add_option("--population", run_args.population, "Override the number of users");
    run_cmd->add_option("--out", run_args.out, "Override the output directory");
    run_cmd->add_option("--threads", run_args.threads, "Worker threads");

    std::string raw_path, summary_out;
    auto* sum_cmd = app.add_subcommand("summarize", "Summarize a raw CSV (means, SEM, Welch)");
    sum_cmd->add_option("raw", raw_path, "Raw results CSV")->required()->check(CLI::ExistingFile);
    sum_cmd->add_option("--out", summary_out, "Directory for summary.csv and welch.csv (default: stdout)");

    std::string world_path;
    std::vector<std::string> replay_learners;
    auto* replay_cmd = app.add_subcommand("replay", "Rerun the IRL learners on a dumped world");
    replay_cmd->add_option("world", world_path, "World record (JSON)")->required()->check(CLI::ExistingFile);
    replay_cmd->add_option("--learner", replay_learners, "Learners to rerun (default: all)");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*run_cmd) return run(run_args);
        if (*sum_cmd) return summarize(raw_path, summary_out);
        if (*replay_cmd) return replay(world_path, replay_learners);
    } catch (const std::exception& e) {
        std::cerr << "stratlab: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

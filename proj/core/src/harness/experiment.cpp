#include "stratlab/harness/experiment.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "stratlab/goal_world.hpp"
#include "stratlab/harness/replay.hpp"
#include "stratlab/harness/summary.hpp"
#include "stratlab/irl/inference.hpp"
#include "stratlab/irl/metrics.hpp"
#include "stratlab/sorting_world.hpp"

namespace stratlab::harness {

const std::vector<std::string>& sorting_header() {
    static const std::vector<std::string> h{"user_id", "t", "phi_star", "theta_star", "learner", "u", "errors"};
    return h;
}

const std::vector<std::string>& teaching_header() {
    static const std::vector<std::string> h{"user_id", "t", "psi_star", "teacher", "a", "b_theta_star", "b_psi_star"};
    return h;
}

const std::vector<std::string>& irl_header() {
    static const std::vector<std::string> h{"user_id",      "features",       "alpha",       "rho",
                                            "phi_star",     "learner",        "reward_error", "strategy_error",
                                            "policy_loss",  "wall_time_ms"};
    return h;
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), std::max<std::size_t>(n, 1));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

namespace {

using Rows = std::vector<std::vector<std::string>>;

// Per-user row blocks, concatenated in user order after the parallel sweep.
CsvTable collect(const std::vector<std::string>& header, std::vector<Rows>& blocks) {
    CsvTable table;
    table.header = header;
    for (auto& b : blocks)
        for (auto& r : b) table.rows.push_back(std::move(r));
    return table;
}

// ---- sorting ---------------------------------------------------------------

sorting::Kind sorting_kind(const std::string& name, sorting::Strategy phi_star, const Belief<sorting::Strategy>& prior) {
    using namespace stratlab::learning;
    if (name == "fixed_phi1") return Fixed<sorting::Strategy>{sorting::Strategy::Phi1};
    if (name == "fixed_phi2") return Fixed<sorting::Strategy>{sorting::Strategy::Phi2};
    if (name == "oracle") return Fixed<sorting::Strategy>{phi_star};
    if (name == "prior") return PriorMixture<sorting::Strategy>{prior};
    if (name == "joint") return joint_from_priors(uniform(sorting::boundary_grid()), prior);
    throw std::invalid_argument("unknown sorting learner '" + name + "'");
}

CsvTable simulate_sorting(const ExperimentConfig& c) {
    const auto theta_prior = uniform(sorting::boundary_grid());
    const Belief<sorting::Strategy> phi_prior(sorting::strategy_grid(), c.sorting.phi_prior);
    const sorting::TeacherOptions opts{c.sorting.phi1_short_only};
    std::vector<Rows> blocks(c.population);
    parallel_for(c.population, c.threads, [&](std::size_t i) {
        const std::uint64_t seed = derive_seed(c.seed, i);
        Rng user_rng = make_rng(seed, 0);
        const int theta_star = static_cast<int>(uniform_int(user_rng, 1, sorting::kNumScrews - 1));
        const auto phi_star = bernoulli(user_rng, c.sorting.p_phi1) ? sorting::Strategy::Phi1 : sorting::Strategy::Phi2;
        const auto task = sorting::SortingTask::standard(theta_star);
        Rows& rows = blocks[i];
        for (const auto& name : c.learners) {
            Rng stream = make_rng(seed, 1);
            const auto trace = sorting::run_episode_stream(stream, task, phi_star, sorting_kind(name, phi_star, phi_prior),
                                                           c.timesteps, theta_prior, opts);
            for (int t = 0; t < c.timesteps; ++t)
                rows.push_back({std::to_string(i), std::to_string(t + 1), std::string(sorting::to_string(phi_star)),
                                std::to_string(theta_star), name, std::to_string(trace.actions[t]),
                                std::to_string(trace.errors[t])});
        }
    });
    return collect(sorting_header(), blocks);
}

// ---- goal teaching ---------------------------------------------------------

goal::Kind teaching_kind(const std::string& name, goal::Psi psi_star, const Belief<goal::Psi>& prior, double lambda) {
    using namespace stratlab::teaching;
    if (name == "fixed_psi1") return FixedPsi<goal::Psi>{goal::Psi::Legible};
    if (name == "fixed_psi2") return FixedPsi<goal::Psi>{goal::Psi::Predictable};
    if (name == "oracle") return FixedPsi<goal::Psi>{psi_star};
    if (name == "prior") return PriorPsi<goal::Psi>{prior};
    if (name == "learn") return Learn<goal::Psi>{prior};
    if (name == "active") return ActiveLearn<goal::Psi>{prior, lambda};
    throw std::invalid_argument("unknown teacher '" + name + "'");
}

CsvTable simulate_teaching(const ExperimentConfig& c) {
    const Belief<goal::Psi> prior(goal::psi_grid(), c.teaching.psi_prior);
    const teaching::TeacherOptions opts{c.teaching.beta, c.teaching.entropy_mode};
    goal::GoalScenario scenario;
    scenario.feedback_noise = c.teaching.feedback_noise;
    std::vector<Rows> blocks(c.population);
    parallel_for(c.population, c.threads, [&](std::size_t i) {
        const std::uint64_t seed = derive_seed(c.seed, i);
        Rng user_rng = make_rng(seed, 0);
        const auto psi_star = bernoulli(user_rng, c.teaching.p_psi1) ? goal::Psi::Legible : goal::Psi::Predictable;
        Rows& rows = blocks[i];
        for (const auto& name : c.learners) {
            Rng stream = make_rng(seed, 1);
            const auto trace = goal::run_teaching_episode(stream, scenario, psi_star,
                                                          teaching_kind(name, psi_star, prior, c.teaching.lambda),
                                                          c.timesteps, opts);
            for (int t = 0; t < c.timesteps; ++t)
                rows.push_back({std::to_string(i), std::to_string(t + 1), std::string(goal::to_string(psi_star)), name,
                                goal::to_string(goal::action_at(trace.actions[t])), format_double(trace.b_theta_star[t]),
                                format_double(trace.b_psi_star[t])});
        }
    });
    return collect(teaching_header(), blocks);
}

// ---- irl -------------------------------------------------------------------

struct IrlCell {
    int features;
    double alpha;
    double rho;
};

std::vector<IrlCell> irl_cells(const IrlSettings& s) {
    std::vector<IrlCell> cells;
    for (int f : s.features)
        for (double a : s.alphas)
            for (double r : s.noise_ratios) cells.push_back({f, a, r});
    return cells;
}

}  // namespace

std::uint64_t irl_cell_seed(std::uint64_t master, int num_features, double alpha) {
    return derive_seed(derive_seed(master, static_cast<std::uint64_t>(num_features)), std::bit_cast<std::uint64_t>(alpha));
}

IrlUser make_irl_user(std::uint64_t seed, int user_id, int num_features, double alpha, double noise_ratio,
                      const IrlSettings& settings) {
    Rng rng = make_rng(seed, 0);
    auto world = irl::Gridworld::random(rng, settings.width, settings.height, num_features, settings.gamma);
    irl::DemonstratorParams params;
    params.theta.resize(num_features);
    for (double& v : params.theta) v = uniform(rng, -1.0, 1.0);
    params.phi = uniform(rng, -1.0, 1.0);
    params.alpha = alpha;
    params.noise_ratio = noise_ratio;
    return IrlUser{seed, user_id, std::move(world), std::move(params)};
}

std::vector<std::vector<std::string>> run_irl_user(const IrlUser& user, const std::vector<std::string>& learners,
                                                   const IrlSettings& settings) {
    Rng demo_rng = make_rng(user.seed, 1);
    const auto demo = irl::generate_demonstration(demo_rng, user.world, user.params);
    std::vector<std::vector<std::string>> rows;
    for (const auto& name : learners) {
        const irl::Learner learner = irl::learner_from_string(name);
        const auto start = std::chrono::steady_clock::now();
        Rng chain_rng = make_rng(user.seed, 2 + static_cast<std::uint64_t>(learner));
        const auto post = irl::infer_joint(chain_rng, user.world, demo, user.params.alpha,
                                           irl::phi_model_for(learner, user.params.phi), settings.mcmc());
        const auto m = irl::compute_metrics(post, user.world, user.params, learner == irl::Learner::Joint);
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        rows.push_back({std::to_string(user.user_id), std::to_string(user.world.num_features()),
                        format_double(user.params.alpha), format_double(user.params.noise_ratio),
                        format_double(user.params.phi), name, format_double(m.reward_error),
                        m.strategy_error ? format_double(*m.strategy_error) : "", format_double(m.policy_loss),
                        settings.record_timing ? format_double(ms) : ""});
    }
    return rows;
}

namespace {

CsvTable simulate_irl(const ExperimentConfig& c) {
    const auto cells = irl_cells(c.irl);
    const std::size_t per_cell = static_cast<std::size_t>(c.population);
    std::vector<Rows> blocks(cells.size() * per_cell);
    parallel_for(blocks.size(), c.threads, [&](std::size_t job) {
        const IrlCell& cell = cells[job / per_cell];
        const int user_id = static_cast<int>(job % per_cell);
        const std::uint64_t seed = derive_seed(irl_cell_seed(c.seed, cell.features, cell.alpha), user_id);
        const IrlUser user = make_irl_user(seed, user_id, cell.features, cell.alpha, cell.rho, c.irl);
        blocks[job] = run_irl_user(user, c.learners, c.irl);
    });
    return collect(irl_header(), blocks);
}

}  // namespace

CsvTable simulate(const ExperimentConfig& config) {
    validate(config);
    switch (config.experiment) {
        case ExperimentKind::Sorting: return simulate_sorting(config);
        case ExperimentKind::GoalTeaching: return simulate_teaching(config);
        case ExperimentKind::Irl:
        case ExperimentKind::IrlNoise: return simulate_irl(config);
    }
    throw std::invalid_argument("simulate: unknown experiment");
}

RunOutputs run_experiment(const ExperimentConfig& config) {
    const CsvTable raw = simulate(config);
    const Summary summary = summarize(raw);
    const std::filesystem::path dir(config.output_dir);
    RunOutputs out{dir / "raw.csv", dir / "summary.csv", dir / "welch.csv", dir / "config.json"};
    write_file_atomic(out.config, config_to_json(config).dump(2) + "\n");
    write_file_atomic(out.raw, raw.to_string());
    write_file_atomic(out.summary, summary_table(summary).to_string());
    write_file_atomic(out.welch, welch_table(summary).to_string());

    const bool is_irl = config.experiment == ExperimentKind::Irl || config.experiment == ExperimentKind::IrlNoise;
    if (is_irl && config.irl.dump_worlds) {
        for (const auto& cell : irl_cells(config.irl))
            for (int u = 0; u < config.population; ++u) {
                const std::uint64_t seed = derive_seed(irl_cell_seed(config.seed, cell.features, cell.alpha), u);
                const IrlUser user = make_irl_user(seed, u, cell.features, cell.alpha, cell.rho, config.irl);
                const std::string name = "F" + std::to_string(cell.features) + "_a" + format_double(cell.alpha) +
                                         "_r" + format_double(cell.rho) + "_u" + std::to_string(u) + ".json";
                write_file_atomic(dir / "worlds" / name, world_record(user, config.irl).dump(2) + "\n");
            }
    }
    return out;
}

}  // namespace stratlab::harness

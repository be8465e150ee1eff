#include "stratlab/harness/replay.hpp"

#include <stdexcept>

namespace stratlab::harness {

using nlohmann::json;

json world_record(const IrlUser& user, const IrlSettings& settings) {
    const auto& w = user.world;
    std::vector<std::vector<int>> features(w.num_states());
    for (int s = 0; s < w.num_states(); ++s) features[s].assign(w.features(s).begin(), w.features(s).end());
    return json{
        {"seed", user.seed},
        {"user_id", user.user_id},
        {"width", w.width()},
        {"height", w.height()},
        {"gamma", w.gamma()},
        {"features", features},
        {"theta_star", user.params.theta},
        {"phi_star", user.params.phi},
        {"alpha", user.params.alpha},
        {"rho", user.params.noise_ratio},
        {"mcmc", {{"samples", settings.mcmc_samples}, {"burn_in", settings.mcmc_burn_in}, {"step", settings.mcmc_step},
                  {"init_draws", settings.mcmc_init_draws}, {"proposal", irl::to_string(settings.mcmc_proposal)}}},
    };
}

IrlUser user_from_record(const json& r, IrlSettings& settings) {
    try {
        const auto rows = r.at("features").get<std::vector<std::vector<int>>>();
        const int width = r.at("width").get<int>();
        const int height = r.at("height").get<int>();
        if (rows.size() != static_cast<std::size_t>(width) * height)
            throw std::invalid_argument("world record: feature rows do not match the grid size");
        const int nf = rows.empty() ? 0 : static_cast<int>(rows.front().size());
        std::vector<std::uint8_t> flat;
        flat.reserve(rows.size() * nf);
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != nf) throw std::invalid_argument("world record: ragged feature rows");
            for (int v : row) {
                if (v != 0 && v != 1) throw std::invalid_argument("world record: features must be 0 or 1");
                flat.push_back(static_cast<std::uint8_t>(v));
            }
        }
        irl::Gridworld world(width, height, nf, std::move(flat), r.at("gamma").get<double>());
        irl::DemonstratorParams params;
        params.theta = r.at("theta_star").get<std::vector<double>>();
        params.phi = r.at("phi_star").get<double>();
        params.alpha = r.at("alpha").get<double>();
        params.noise_ratio = r.at("rho").get<double>();
        params.validate(nf);
        settings.width = width;
        settings.height = height;
        settings.gamma = world.gamma();
        if (r.contains("mcmc")) {
            const auto& m = r.at("mcmc");
            settings.mcmc_samples = m.value("samples", settings.mcmc_samples);
            settings.mcmc_burn_in = m.value("burn_in", settings.mcmc_burn_in);
            settings.mcmc_step = m.value("step", settings.mcmc_step);
            settings.mcmc_init_draws = m.value("init_draws", settings.mcmc_init_draws);
            if (m.contains("proposal")) settings.mcmc_proposal = irl::proposal_from_string(m.at("proposal").get<std::string>());
        }
        return IrlUser{r.at("seed").get<std::uint64_t>(), r.at("user_id").get<int>(), std::move(world),
                       std::move(params)};
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("world record: ") + e.what());
    }
}

CsvTable replay(const json& record, const std::vector<std::string>& learners) {
    IrlSettings settings;
    const IrlUser user = user_from_record(record, settings);
    const auto& names = learners.empty() ? known_learners(ExperimentKind::Irl) : learners;
    CsvTable table;
    table.header = irl_header();
    table.rows = run_irl_user(user, names, settings);
    return table;
}

}  // namespace stratlab::harness

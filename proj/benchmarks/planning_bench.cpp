#include <benchmark/benchmark.h>

#include <vector>

#include "stratlab/irl/gridworld.hpp"
#include "stratlab/irl/planning.hpp"
#include "stratlab/rng.hpp"

using namespace stratlab;

namespace {

struct Instance {
    irl::Gridworld world;
    std::vector<double> rewards;
};

Instance make_instance(int nf) {
    Rng rng = make_rng(7, nf);
    auto world = irl::Gridworld::random(rng, 8, 8, nf);
    std::vector<double> theta(nf);
    for (auto& v : theta) v = uniform(rng, -1.0, 1.0);
    auto r = world.rewards(theta);
    return {std::move(world), std::move(r)};
}

void BM_ValueIteration(benchmark::State& state) {
    const auto inst = make_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(irl::value_iteration(inst.world, inst.rewards));
}
BENCHMARK(BM_ValueIteration)->Arg(4)->Arg(16);

void BM_PolicyIterationCold(benchmark::State& state) {
    const auto inst = make_instance(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(irl::policy_iteration(inst.world, inst.rewards));
}
BENCHMARK(BM_PolicyIterationCold)->Arg(4)->Arg(16);

// Warm start from the optimal policy of slightly perturbed rewards, as in an MCMC step.
void BM_PolicyIterationWarm(benchmark::State& state) {
    auto inst = make_instance(static_cast<int>(state.range(0)));
    const auto start = irl::policy_iteration(inst.world, inst.rewards).policy;
    Rng rng = make_rng(8, 0);
    for (auto& r : inst.rewards) r += 0.02 * standard_normal(rng);
    for (auto _ : state) benchmark::DoNotOptimize(irl::policy_iteration(inst.world, inst.rewards, start));
}
BENCHMARK(BM_PolicyIterationWarm)->Arg(4)->Arg(16);

}  // namespace

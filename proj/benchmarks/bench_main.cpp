#include <benchmark/benchmark.h>

#include <random>

#include "cpecs/coci.hpp"
#include "cpecs/condition.hpp"
#include "cpecs/oracles.hpp"
#include "cpecs/osa.hpp"

using namespace cpecs;

namespace {

ParameterVector random_theta(std::mt19937_64& rng, std::size_t m, double hi = 1.0) {
    std::uniform_real_distribution<double> u(0.0, hi);
    std::vector<double> v(m);
    for (double& x : v) x = u(rng);
    return ParameterVector(v);
}

void BM_GreedyOsa(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    OsaSpec spec;
    spec.group_sizes.assign(m, 3);
    spec.budget = static_cast<std::int64_t>(10 * m);
    std::mt19937_64 rng(1);
    const auto theta = random_theta(rng, m, 0.25);
    for (auto _ : state) benchmark::DoNotOptimize(greedy_osa(spec, theta));
}
BENCHMARK(BM_GreedyOsa)->RangeMultiplier(4)->Range(4, 1024);

void BM_WaterMaximizer(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    WaterSpec spec;
    spec.caps.assign(m, 1.0);
    spec.requirement = static_cast<double>(m) / 2;
    spec.grid_step = 0.1;
    spec.costs.assign(m, CostFunction::quadratic(0.5));
    std::mt19937_64 rng(2);
    const auto theta = random_theta(rng, m);
    for (auto _ : state) benchmark::DoNotOptimize(water_maximizer(spec, theta));
}
BENCHMARK(BM_WaterMaximizer)->DenseRange(2, 8, 2);

void BM_CandidateSet(benchmark::State& state, ConditionStrategy strategy) {
    const auto spec = make_top_k_oracle(8, 3);
    std::mt19937_64 rng(3);
    const auto center = random_theta(rng, 8);
    std::vector<double> radii(8, 0.05);
    const auto box = clamp_box(center.values(), radii, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(candidate_set(strategy, *spec, box));
}
BENCHMARK_CAPTURE(BM_CandidateSet, bi_monotone, ConditionStrategy::bi_monotone());
BENCHMARK_CAPTURE(BM_CandidateSet, corners, ConditionStrategy::corners());
BENCHMARK_CAPTURE(BM_CandidateSet, grid5, ConditionStrategy::grid(5));

void BM_CociRun(benchmark::State& state) {
    const auto inst = make_top_k_instance(ParameterVector{0.8, 0.6, 0.4, 0.2}, 2);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        CociConfig c;
        c.seed = seed++;
        const auto r = run_coci(inst, c);
        state.counters["rounds"] = static_cast<double>(r.rounds);
    }
}
BENCHMARK(BM_CociRun)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

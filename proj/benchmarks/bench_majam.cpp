#include <benchmark/benchmark.h>

#include "majam/chain_lp.hpp"
#include "majam/optimizer.hpp"
#include "majam/precoder.hpp"
#include "majam/simulator.hpp"

using namespace majam;

namespace {

std::vector<UserEnvironment> scenario(const SystemConfig& cfg, std::uint64_t index = 0)
{
    Rng rng = make_stream(99, index);
    return sample_scenario(cfg, rng);
}

void BM_JammerChannels(benchmark::State& state)
{
    auto cfg = default_config();
    cfg.n_paths = static_cast<int>(state.range(0));
    const auto envs = scenario(cfg);
    const auto p = fpa_layout(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(jammer_channels(p, envs, cfg.wavelength_m));
}
BENCHMARK(BM_JammerChannels)->Arg(6)->Arg(12)->Arg(24);

void BM_PositionGradient(benchmark::State& state)
{
    const auto cfg = default_config();
    const auto envs = scenario(cfg);
    const auto p = fpa_layout(cfg);
    const auto v = mrt_equal_power(jammer_channels(p, envs, cfg.wavelength_m), cfg.jammer_power_w);
    for (auto _ : state) benchmark::DoNotOptimize(jamming_power_and_gradient(p, v.v, envs, cfg.wavelength_m));
}
BENCHMARK(BM_PositionGradient);

void BM_ChainLp(benchmark::State& state)
{
    const auto m = state.range(0);
    ChainProblem problem;
    problem.cost = Eigen::VectorXd::LinSpaced(m, -1.0, 1.0);
    problem.lower = Eigen::VectorXd::LinSpaced(m, 0.0, 1.0 * (m - 1)).array() - 0.4;
    problem.upper = problem.lower.array() + 0.8;
    problem.current = problem.lower.array() + 0.4;
    problem.min_gap = 0.5;
    for (auto _ : state) benchmark::DoNotOptimize(solve_chain_lp(problem));
}
BENCHMARK(BM_ChainLp)->Arg(4)->Arg(8)->Arg(16);

void BM_RunBcd(benchmark::State& state)
{
    const auto cfg = default_config();
    std::uint64_t i = 0;
    for (auto _ : state) {
        state.PauseTiming();
        const auto envs = scenario(cfg, i++);
        state.ResumeTiming();
        benchmark::DoNotOptimize(run_bcd(envs, cfg));
    }
}
BENCHMARK(BM_RunBcd)->Unit(benchmark::kMillisecond);

void BM_FullCsiBeamforming(benchmark::State& state)
{
    const auto cfg = default_config();
    const auto envs = scenario(cfg);
    const auto w = bs_precoder(stack_direct_channels(envs), cfg.bs_power_w, cfg.precoder);
    const auto p = fpa_layout(cfg);
    for (auto _ : state) benchmark::DoNotOptimize(full_csi_beamforming(envs, w.w, p, cfg));
}
BENCHMARK(BM_FullCsiBeamforming)->Unit(benchmark::kMillisecond);

void BM_RealizationAllModes(benchmark::State& state)
{
    const auto cfg = default_config();
    const auto modes = all_jam_modes();
    std::uint64_t i = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_realization_modes(cfg, i++, modes));
}
BENCHMARK(BM_RealizationAllModes)->Unit(benchmark::kMillisecond);

} // namespace
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "phonent/bogoliubov.hpp"
#include "phonent/experiment.hpp"
#include "phonent/symplectic.hpp"
#include "phonent/validation.hpp"

namespace {

using namespace phonent;

void BM_TwoModeSpectrum(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const CovarianceMatrix s = random_physical_covariance(2, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(transposed_symplectic_eigenvalues_two_mode(s));
    }
}
BENCHMARK(BM_TwoModeSpectrum);

void BM_FSums(benchmark::State& state) {
    CondensateParams p;
    p.truncation = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(f_sums(1, p));
    }
}
BENCHMARK(BM_FSums)->Arg(50)->Arg(100)->Arg(200);

void BM_ComposedChannelBuild(benchmark::State& state) {
    CondensateParams p;
    p.truncation = static_cast<std::size_t>(state.range(0));
    const RindlerSpectrum spectrum = default_spectrum(p);
    for (auto _ : state) {
        ComposedChannel channel(p, 0.1, spectrum);
        benchmark::DoNotOptimize(channel.h());
    }
}
BENCHMARK(BM_ComposedChannelBuild)->Arg(70)->Arg(100)->Unit(benchmark::kMillisecond);

void BM_PointEvaluation(benchmark::State& state) {
    ExperimentConfig cfg;
    cfg.channel = state.range(0) == 0 ? ChannelMode::composed : ChannelMode::literal;
    const NegativityPipeline pipeline(cfg);
    double tau = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(pipeline.evaluate(ManeuverPoint{tau, 0.0}));
        tau += 1e-3;
    }
}
BENCHMARK(BM_PointEvaluation)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
    ExperimentConfig cfg;
    cfg.thruster_acceleration = 3e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep(cfg, SweepAxis::delta_phi, {0.0, 5.0, 32}, 1));
    }
}
BENCHMARK(BM_Sweep)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

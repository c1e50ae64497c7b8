#include <benchmark/benchmark.h>

#include "optosqueeze/dynamics.hpp"
#include "optosqueeze/lyapunov.hpp"
#include "optosqueeze/metrics.hpp"
#include "optosqueeze/model_matrices.hpp"
#include "optosqueeze/presets.hpp"
#include "optosqueeze/stability.hpp"
#include "optosqueeze/sweep.hpp"

namespace {

using namespace optosqueeze;

ModelParams reference() { return derive_model(reference_params()); }

void BM_Analyze(benchmark::State& state) {
    const ModelParams m = reference();
    for (auto _ : state) benchmark::DoNotOptimize(analyze(m));
}
BENCHMARK(BM_Analyze);

void BM_QuarticRoots(benchmark::State& state) {
    const ModelParams m = reference();
    for (auto _ : state) benchmark::DoNotOptimize(quartic_eigenvalues(m));
}
BENCHMARK(BM_QuarticRoots);

void BM_DriftEigenvalues(benchmark::State& state) {
    const DriftMatrix w = build_drift(reference());
    for (auto _ : state) benchmark::DoNotOptimize(drift_eigenvalues(w));
}
BENCHMARK(BM_DriftEigenvalues);

void BM_SolveLyapunov(benchmark::State& state) {
    const ModelParams m = reference();
    const DriftMatrix w = build_drift(m);
    const DiffusionMatrix d = build_diffusion(m);
    for (auto _ : state) benchmark::DoNotOptimize(solve_lyapunov(w, d));
}
BENCHMARK(BM_SolveLyapunov);

void BM_EvaluateMetrics(benchmark::State& state) {
    const auto sigma = steady_state(reference()).sigma;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_metrics(sigma));
}
BENCHMARK(BM_EvaluateMetrics);

// Full per-point pipeline as run inside a sweep, drive-power mode.
void BM_SweepPoint(benchmark::State& state) {
    const PhysicalParams p = figure_preset("fig2b").base;
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_point(p));
}
BENCHMARK(BM_SweepPoint);

void BM_EvolveToSteady(benchmark::State& state) {
    const ModelParams m = reference();
    const DriftMatrix w = build_drift(m);
    const DiffusionMatrix d = build_diffusion(m);
    const CovarianceMatrix sigma0 = initial_covariance(m);
    for (auto _ : state) benchmark::DoNotOptimize(evolve_to_steady(w, d, sigma0));
}
BENCHMARK(BM_EvolveToSteady)->Unit(benchmark::kMillisecond);

void BM_Fig5aSweep(benchmark::State& state) {
    const SweepSpec spec = figure_preset("fig5a");
    for (auto _ : state) benchmark::DoNotOptimize(run_sweep(spec, {.jobs = 1}));
}
BENCHMARK(BM_Fig5aSweep)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();

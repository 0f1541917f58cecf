#include <benchmark/benchmark.h>

#include "oudrift/montecarlo.hpp"
#include "oudrift/mse_theory.hpp"

using namespace oudrift;

namespace {

McConfig mc_config()
{
    const ModelParams p(1.0, 1.0);
    return McConfig(20000, 42, Scenario{p, DriftSpec::linear(0.0, 0.5), 50,
                                        {EstimatorKind::exp_smoothing, LearningRate(0.1)}});
}

const CurveInputs kCurve{ModelParams(1.0, 1.0), 0.5, LearningRate(0.05)};

void BM_mc_serial(benchmark::State& state)
{
    const McConfig cfg = mc_config();
    for (auto _ : state) benchmark::DoNotOptimize(estimate_mse_serial(cfg));
}

void BM_mc_parallel(benchmark::State& state)
{
    const McConfig cfg = mc_config();
    for (auto _ : state) benchmark::DoNotOptimize(estimate_mse(cfg, static_cast<int>(state.range(0))));
}

void BM_curve_serial(benchmark::State& state)
{
    const auto formula = static_cast<MseFormula>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mse_curve_serial(formula, kCurve, NRange{1, 2000}));
}

void BM_curve_parallel(benchmark::State& state)
{
    const auto formula = static_cast<MseFormula>(state.range(0));
    const int threads = static_cast<int>(state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(mse_curve(formula, kCurve, NRange{1, 2000}, threads));
}

}  // namespace

BENCHMARK(BM_mc_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_mc_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_curve_serial)
    ->Arg(static_cast<int>(MseFormula::bound))
    ->Arg(static_cast<int>(MseFormula::exact_recursion))
    ->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_curve_parallel)
    ->ArgsProduct({{static_cast<int>(MseFormula::bound), static_cast<int>(MseFormula::exact_recursion)}, {1, 2, 4}})
    ->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "fixtures.hpp"
#include "mcdemosaic/cfa.hpp"
#include "mcdemosaic/green_init.hpp"
#include "mcdemosaic/mc_variational.hpp"
#include "mcdemosaic/pipeline.hpp"
#include "mcdemosaic/quality.hpp"
#include "mcdemosaic/rb_recon.hpp"

using namespace mcdemosaic;

namespace {

RgbImage scene(int n) {
    const Plane base = fixtures::smooth_plane(n, n, 7);
    const RgbImage disc = fixtures::chroma_disc(n, n / 4.0);
    return {map_planes(base, disc.r, [](double a, double b) { return 0.5 * (a + b); }),
            map_planes(base, disc.g, [](double a, double b) { return 0.5 * (a + b); }),
            map_planes(base, disc.b, [](double a, double b) { return 0.5 * (a + b); })};
}

void BM_GreenInit(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BayerMosaic m = mosaic(scene(n), CfaPattern::RGGB);
    for (auto _ : state) benchmark::DoNotOptimize(interpolate_green(m));
    state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_SolverOuterIteration(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    McParams params;
    params.max_outer = 1;
    params.min_outer = 1;
    const Plane g_hat = interpolate_green(mosaic(scene(n), CfaPattern::RGGB));
    for (auto _ : state) benchmark::DoNotOptimize(solve(g_hat, params));
    state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_SolveDefaults(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const Plane g_hat = interpolate_green(mosaic(scene(n), CfaPattern::RGGB));
    for (auto _ : state) benchmark::DoNotOptimize(solve(g_hat, McParams{}));
    state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_ReconstructRb(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BayerMosaic m = mosaic(scene(n), CfaPattern::RGGB);
    const Plane g = interpolate_green(m);
    for (auto _ : state) benchmark::DoNotOptimize(reconstruct_rb(m, g, RbParams{}));
    state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_FullPipeline(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BayerMosaic m = mosaic(scene(n), CfaPattern::RGGB);
    for (auto _ : state) benchmark::DoNotOptimize(demosaic(m, PipelineConfig{}));
    state.SetItemsProcessed(state.iterations() * n * n);
}

void BM_Scielab(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const RgbImage a = scene(n);
    const RgbImage b = demosaic_bilinear(mosaic(a, CfaPattern::RGGB));
    for (auto _ : state) benchmark::DoNotOptimize(scielab(a, b, kDefaultSamplesPerDegree, kDefaultBorderCrop));
}

}  // namespace

BENCHMARK(BM_GreenInit)->Arg(128)->Arg(512);
BENCHMARK(BM_SolverOuterIteration)->Arg(128)->Arg(512);
BENCHMARK(BM_SolveDefaults)->Arg(128)->Arg(512);
BENCHMARK(BM_ReconstructRb)->Arg(128)->Arg(512);
BENCHMARK(BM_FullPipeline)->Arg(256);
BENCHMARK(BM_Scielab)->Arg(256);
BENCHMARK_MAIN();

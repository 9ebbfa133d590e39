#include <benchmark/benchmark.h>

#include "fbgshape/config.hpp"
#include "fbgshape/reconstruct.hpp"
#include "fbgshape/sensing.hpp"
#include "fbgshape/simulate.hpp"

using namespace fbgshape;

namespace {

const SystemConfig& config() {
    static const SystemConfig cfg = default_config();
    return cfg;
}

WavelengthFrame bent_frame() {
    simulate::ScenarioSpec spec;
    spec.kind = simulate::ScenarioKind::FreeBend;
    spec.cable_mm = 4.0;
    return simulate::synthesize_frames(spec, config().geometry, config().cdm, 1).frames[0];
}

} // namespace

static void BM_SolveActiveArea(benchmark::State& state) {
    const WavelengthFrame frame = bent_frame();
    for (auto _ : state) {
        benchmark::DoNotOptimize(sensing::solve_aa(config().geometry, frame, 2));
    }
}
BENCHMARK(BM_SolveActiveArea);

static void BM_IntegrateCenterline(benchmark::State& state) {
    const auto profile = reconstruct::CurvatureProfile::from_signed_knots(
        {0.0, 10.0, 20.0, 30.0}, {0.01, 0.02, -0.01, 0.03}, {0.0, 0.0, 0.0, 0.0});
    const double step = 1.0 / double(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            reconstruct::integrate_centerline(profile, 35.0, 0.0, 0.0, 0.0, step));
    }
}
BENCHMARK(BM_IntegrateCenterline)->Arg(10)->Arg(100);

static void BM_ReconstructFrame(benchmark::State& state) {
    const WavelengthFrame frame = bent_frame();
    const double step = 1.0 / double(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(reconstruct::reconstruct_cdm(
            frame, config().geometry, config().calibration, config().cdm, step));
    }
}
BENCHMARK(BM_ReconstructFrame)->Arg(10)->Arg(100);

static void BM_SynthesizeFrame(benchmark::State& state) {
    simulate::ScenarioSpec spec;
    spec.kind = simulate::ScenarioKind::ObstacleMiddle;
    spec.noise_sigma_nm = 0.001;
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            simulate::synthesize_frames(spec, config().geometry, config().cdm, seed++));
    }
}
BENCHMARK(BM_SynthesizeFrame);

BENCHMARK_MAIN();

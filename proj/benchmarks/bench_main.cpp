#include "evlab/ftir.hpp"
#include "evlab/numcore.hpp"
#include "evlab/propagate.hpp"
#include "evlab/stationary.hpp"

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

using namespace evlab;

static void BM_Integrate(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(integrate([](double x) { return std::sin(50.0 * x) * std::exp(-x); }, 0.0, 10.0, 1e-10));
    }
}
BENCHMARK(BM_Integrate);

static void BM_BarrierSolution(benchmark::State& state) {
    const BarrierSpec spec(2.0, 3.0, 1.0);
    double e = 0.5;
    for (auto _ : state) {
        benchmark::DoNotOptimize(barrier_solution(e, spec));
        e = e < 1.9 ? e + 1e-3 : 0.5;
    }
}
BENCHMARK(BM_BarrierSolution);

static void BM_EvolveWave(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid1D grid(-0.5 * static_cast<double>(n) * 0.05, 0.05, n);
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = grid.point(i);
        if (std::abs(x) < 5.0) v[i] = std::pow(std::cos(std::numbers::pi * x / 10.0), 8);
    }
    const WavePacket p(grid, v);
    const auto vel = right_moving_velocity(p);
    const auto medium = MediumProfile::barrier(grid, 6.0, 9.0, 1.0);
    WaveRunOptions o;
    o.steps = 200;
    o.snapshot_stride = 200;
    for (auto _ : state) benchmark::DoNotOptimize(evolve_wave(p, vel, medium, o));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * n * o.steps));
}
BENCHMARK(BM_EvolveWave)->Arg(4096)->Arg(32768);

static void BM_TransmitPulse(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Grid1D tg = Grid1D::spanning(-300.0, 300.0, n);
    std::vector<Complex> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = tg.point(i);
        v[i] = std::exp(-t * t / 2500.0) * std::exp(Complex(0.0, -t));
    }
    const WavePacket in(tg, v);
    const GapSpec spec(1.5, std::numbers::pi / 4.0, 2.0);
    for (auto _ : state) benchmark::DoNotOptimize(transmit_pulse(in, spec));
}
BENCHMARK(BM_TransmitPulse)->Arg(4096)->Arg(65536);

BENCHMARK_MAIN();

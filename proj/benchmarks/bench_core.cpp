#include <benchmark/benchmark.h>

#include <cmath>

#include "slabdtn/gamma_lab.hpp"
#include "slabdtn/slab_oracle.hpp"
#include "slabdtn/specfun.hpp"
#include "slabdtn/spectral_field.hpp"
#include "slabdtn/symbol.hpp"

using namespace slabdtn;

static void BM_bessel_i_scaled_series(benchmark::State& state) {
    const specfun::BesselOrder nu(0.7);
    double x = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::bessel_i_scaled(nu, x).value_scaled);
        x = x < 14.0 ? x + 0.37 : 0.1;
    }
}
BENCHMARK(BM_bessel_i_scaled_series);

static void BM_bessel_i_scaled_asymptotic(benchmark::State& state) {
    const specfun::BesselOrder nu(0.7);
    double x = 20.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(specfun::bessel_i_scaled(nu, x).value_scaled);
        x = x < 9000.0 ? x + 11.3 : 20.0;
    }
}
BENCHMARK(BM_bessel_i_scaled_asymptotic);

static void BM_s_tilde(benchmark::State& state) {
    const FracParams p = FracParams::from_s(0.3);
    double r = 1e-3;
    for (auto _ : state) {
        benchmark::DoNotOptimize(s_tilde(p, r));
        r = r < 1e3 ? r * 1.3 : 1e-3;
    }
}
BENCHMARK(BM_s_tilde);

static void BM_solve_mode(benchmark::State& state) {
    const FracParams p = FracParams::from_s(0.25);
    const int m = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            slab_oracle::solve_mode(slab_oracle::ModeProblem::standard(p, 2.0, m))
                .dtn_value);
    }
}
BENCHMARK(BM_solve_mode)->Arg(256)->Arg(1024)->Arg(4096);

static void BM_apply_operator(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const PeriodicGrid grid = PeriodicGrid::make(1, 16.0, n);
    const FracParams p = FracParams::from_s(0.75);
    Field u = make_field(grid);
    for (int j = 0; j < n; ++j) u.values[j] = std::sin(0.7 * grid.coord(j));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            apply_operator(u, p, OperatorKind::slab_dtn).values[0]);
    }
}
BENCHMARK(BM_apply_operator)->Arg(1024)->Arg(8192);

static void BM_t_s(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(gamma_lab::t_s(0.25, 2.0).value);
    }
}
BENCHMARK(BM_t_s);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "halfspace/bessel.hpp"
#include "halfspace/experiments.hpp"
#include "halfspace/fd_solver.hpp"
#include "halfspace/green.hpp"
#include "halfspace/spectral.hpp"

using namespace halfspace;

namespace {

const LayeredMedium kMedium(2.0, 1.0);

void BM_green_value(benchmark::State& state) {
    const Point3 x{0.3, -0.2, 1.7}, y{0.0, 0.0, 0.4};
    for (auto _ : state)
        benchmark::DoNotOptimize(green_value(kMedium, x, y));
}
BENCHMARK(BM_green_value);

void BM_green_gradient(benchmark::State& state) {
    const Point3 x{0.3, -0.2, 1.7}, y{0.0, 0.0, 0.4};
    for (auto _ : state)
        benchmark::DoNotOptimize(green_gradient(kMedium, x, y));
}
BENCHMARK(BM_green_gradient);

void BM_bessel_j0(benchmark::State& state) {
    const double t = static_cast<double>(state.range(0)) / 10.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(bessel_j0(t));
}
BENCHMARK(BM_bessel_j0)->Arg(5)->Arg(60)->Arg(119)->Arg(121)->Arg(5000);

void BM_hankel_invert(benchmark::State& state) {
    QuadratureSpec spec;
    spec.abs_tol = 1e-13;
    spec.rel_tol = 1e-10;
    const Point3 x{1.0, 0.5, 0.8}, y{0.0, 0.0, 0.3};
    for (auto _ : state)
        benchmark::DoNotOptimize(hankel_invert(kMedium, x, y, spec).value);
}
BENCHMARK(BM_hankel_invert);

void BM_fd_solve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BoxGrid grid(2.0, n);
    const Point3 y{0.0, 0.0, 0.5};
    const auto bc = [&](const Point3& p) { return green_value(kMedium, p, y); };
    const FdSystem sys = build_system(kMedium, grid, y, bc);
    for (auto _ : state) {
        auto [field, report] = solve_system(sys, 1e-8);
        benchmark::DoNotOptimize(field.values.data());
    }
}
BENCHMARK(BM_fd_solve)->Arg(17)->Arg(33)->Unit(benchmark::kMillisecond);

void BM_orthogonality_integral(benchmark::State& state) {
    ProbeConfig cfg;
    cfg.distances = {0.1};
    cfg.v = 0.5;
    cfg.cells_per_axis = static_cast<int>(state.range(0));
    const LayeredMedium m2(1.5, 1.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(orthogonality_integral(kMedium, m2, cfg, 0.1));
}
BENCHMARK(BM_orthogonality_integral)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

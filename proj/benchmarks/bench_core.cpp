#include <benchmark/benchmark.h>

#include "nsrad/initial_data.hpp"
#include "nsrad/solver.hpp"
#include "nsrad/tridiag.hpp"

using namespace nsrad;

namespace {

ModelParams sv_model(int cells) {
    ModelParams p;
    p.dim = 2;
    p.alpha = 1.0;
    p.gamma = 2.0;
    p.grid_cells = cells;
    return p;
}

LagrangianState sv_state(const ModelParams& p) {
    WeakDataOptions weak;
    return build_initial_state(preset("sv"), p.dim, p.outer_radius, p.grid_cells, weak);
}

void BM_MomentumRhs(benchmark::State& state) {
    const auto p = sv_model(static_cast<int>(state.range(0)));
    const auto s = sv_state(p);
    for (auto _ : state) {
        auto rhs = momentum_rhs(s, p);
        benchmark::DoNotOptimize(rhs.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MomentumRhs)->Range(256, 8192);

void BM_SemiImplicitStep(benchmark::State& state) {
    const auto p = sv_model(static_cast<int>(state.range(0)));
    const auto s0 = sv_state(p);
    const double dt = stable_dt(s0, p);
    for (auto _ : state) {
        auto s = s0;
        step_semi_implicit(s, p, dt);
        benchmark::DoNotOptimize(s.density.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SemiImplicitStep)->Range(256, 8192);

void BM_ExplicitStep(benchmark::State& state) {
    auto p = sv_model(static_cast<int>(state.range(0)));
    p.scheme = TimeScheme::explicit_rk2;
    const auto s0 = sv_state(p);
    const double dt = stable_dt(s0, p);
    for (auto _ : state) {
        auto s = s0;
        step_explicit(s, p, dt);
        benchmark::DoNotOptimize(s.density.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ExplicitStep)->Range(256, 8192);

void BM_TridiagonalSolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<double> diag(n, 4.0), off(n - 1, -1.0), rhs(n, 1.0);
    for (auto _ : state) {
        auto d = diag;
        auto r = rhs;
        solve_spd_tridiagonal(d, off, r);
        benchmark::DoNotOptimize(r.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_TridiagonalSolve)->Range(256, 8192);

void BM_MassCoordinate(benchmark::State& state) {
    const auto p = sv_model(256);
    const auto s = sv_state(p);
    const auto prof = to_eulerian(s);
    for (auto _ : state) {
        auto m = mass_coordinate(prof);
        benchmark::DoNotOptimize(m.second);
    }
}
BENCHMARK(BM_MassCoordinate);

}  // namespace

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include "charp/fgl.hpp"
#include "charp/gadual.hpp"
#include "charp/liealg.hpp"
#include "charp/specseq.hpp"
#include "charp/witt.hpp"

using namespace charp;

static void BM_series_multiply(benchmark::State& state) {
    Truncation t;
    t.degree_cap = state.range(0);
    auto ctx = make_q_context({"u", "v", "w"}, {1, 1, 1}, t);
    auto u = QSeries::variable(ctx, "u");
    auto v = QSeries::variable(ctx, "v");
    auto w = QSeries::variable(ctx, "w");
    QSeries a = (u + v + w + u * v).pow(3);
    QSeries b = (u - w + v * w).pow(3);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_series_multiply)->Arg(6)->Arg(10);

static void BM_ghost_solve(benchmark::State& state) {
    // measure the inductive solve itself by evaluating all structure
    // polynomials of the cached system against the ghost identities
    auto sys = build_witt_system(2, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        for (int i = 0; i < sys->n; ++i)
            benchmark::DoNotOptimize(sekiguchi_suwa_G(*sys, i));
    }
}
BENCHMARK(BM_ghost_solve)->Arg(3)->Arg(4);

static void BM_psi_homomorphism(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(psi_homomorphism_check(2, 2, 4, 3));
}
BENCHMARK(BM_psi_homomorphism);

static void BM_spectral_pages(benchmark::State& state) {
    SplitMix64 rng(1);
    auto fc = random_filtered_complex(3, rng, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(initial_page(fc));
        benchmark::DoNotOptimize(infinity_page(fc));
    }
}
BENCHMARK(BM_spectral_pages);

static void BM_leibniz_trial(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(bockstein_leibniz_check(2, 1, seed++));
}
BENCHMARK(BM_leibniz_trial);

static void BM_restricted_trials(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(restricted_checks(3, 3, 10, 0));
}
BENCHMARK(BM_restricted_trials);

BENCHMARK_MAIN();

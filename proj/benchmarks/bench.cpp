#include <benchmark/benchmark.h>

#include "mechlab/dist.hpp"
#include "mechlab/mcestimate.hpp"
#include "mechlab/myerson.hpp"
#include "mechlab/optmech.hpp"

using namespace mechlab;

namespace {

DiscreteDist uniform_n(std::size_t n) {
    std::vector<Rational> sup;
    for (std::size_t i = 0; i < n; ++i) sup.push_back(Rational(static_cast<long>(i)));
    return DiscreteDist::uniform(std::move(sup));
}

void BM_convolve(benchmark::State& state) {
    auto d = uniform_n(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(convolve(d, d));
}
BENCHMARK(BM_convolve)->Arg(16)->Arg(64)->Arg(256);

void BM_convolve_power(benchmark::State& state) {
    auto d = DiscreteDist::bernoulli(Rational(1, 3));
    for (auto _ : state)
        benchmark::DoNotOptimize(convolve_power(d, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_convolve_power)->Arg(10)->Arg(100);

void BM_rev1(benchmark::State& state) {
    auto d = binomial_dist(static_cast<std::size_t>(state.range(0)), Rational(1, 2));
    for (auto _ : state) benchmark::DoNotOptimize(rev1(d));
}
BENCHMARK(BM_rev1)->Arg(100)->Arg(1000);

void BM_solve_optimal_exact(benchmark::State& state) {
    auto p = ProductDist::iid(uniform_n(static_cast<std::size_t>(state.range(0))), 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_optimal(p));
}
BENCHMARK(BM_solve_optimal_exact)->Arg(3)->Arg(4)->Arg(5);

void BM_solve_optimal_float(benchmark::State& state) {
    auto p = ProductDist::iid(uniform_n(static_cast<std::size_t>(state.range(0))), 2);
    for (auto _ : state) benchmark::DoNotOptimize(solve_optimal(p, SolveMode::Float));
}
BENCHMARK(BM_solve_optimal_float)->Arg(4)->Arg(6);

void BM_er_sampling(benchmark::State& state) {
    McConfig cfg;
    cfg.samples = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(brev_lower_estimate(10, cfg));
}
BENCHMARK(BM_er_sampling)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();

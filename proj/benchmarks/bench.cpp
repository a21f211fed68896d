#include <benchmark/benchmark.h>

#include "ext2/steenrod.hpp"

using namespace ext2;

static void BM_AdemReduce(benchmark::State& state) {
    int n = int(state.range(0));
    for (auto _ : state) {
        Word w;
        for (int i = n; i >= 1; --i) w.push_back(i);
        benchmark::DoNotOptimize(adem_reduce(Algebra::A, w));
    }
}
BENCHMARK(BM_AdemReduce)->Arg(6)->Arg(10);

static void BM_MilnorMultiply(benchmark::State& state) {
    auto b = algebra_basis(Algebra::A2, 11);
    for (auto _ : state) {
        for (const auto& x : b)
            for (const auto& y : b)
                benchmark::DoNotOptimize(milnor_multiply(to_milnor(x), to_milnor(y)));
    }
}
BENCHMARK(BM_MilnorMultiply);

BENCHMARK_MAIN();

// Serial reference drivers against the OpenMP fan-out on the same task lists.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "expdio/pillai.hpp"
#include "expdio/search.hpp"

using namespace expdio;

namespace {

int threads_for(const benchmark::State& st) { return st.range(0) ? omp_get_max_threads() : 1; }

void BM_verify(benchmark::State& st) {
    const bool serial = st.range(0) == 0;
    for (auto _ : st) {
        auto s = verify_range({2, 40}, {2, 40}, 10000, threads_for(st), {}, {}, serial);
        benchmark::DoNotOptimize(s.pairs);
    }
}

void BM_jesmanowicz(benchmark::State& st) {
    const bool serial = st.range(0) == 0;
    for (auto _ : st) {
        auto s = jesmanowicz_range(JesMode::SmallF, 60, threads_for(st), {}, {}, serial);
        benchmark::DoNotOptimize(s.triples);
    }
}

void BM_pillai(benchmark::State& st) {
    const bool serial = st.range(0) == 0;
    for (auto _ : st) {
        auto s = pillai_range({2, 30}, {2, 30}, {}, threads_for(st), {}, {}, serial);
        benchmark::DoNotOptimize(s.pairs);
    }
}

}  // namespace

// arg 0: serial reference, arg 1: OpenMP with all available threads
BENCHMARK(BM_verify)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_jesmanowicz)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_pillai)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

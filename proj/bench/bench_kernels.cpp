// Serial vs OpenMP for the three parallel kernels. Arg 0 is serial, 1 is OpenMP.

#include <benchmark/benchmark.h>

#include "cyc/cw_oct.hpp"
#include "cyc/oracle.hpp"
#include "cyc/random.hpp"
#include "cyc/tw.hpp"

using namespace cyc;

static void BM_Zeta(benchmark::State& st) {
    const int k = 8;
    Rng rng(1);
    OctTable base(std::size_t{1} << (2 * k));
    for (auto& x : base) x = static_cast<Weight>(rng() % 1000);
    for (auto _ : st) {
        OctTable t = base;
        if (st.range(0))
            zeta_min_parallel(t, k);
        else
            zeta_min(t, k);
        benchmark::DoNotOptimize(t.data());
    }
}
BENCHMARK(BM_Zeta)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_Oracle(benchmark::State& st) {
    Rng rng(2);
    RandomGraphOptions o;
    o.edge_prob = 0.35;
    Multigraph g = random_multigraph(rng, 15, o);
    for (auto _ : st) {
        auto r = st.range(0) ? brute_force(g, Problem::SECT) : brute_force_serial(g, Problem::SECT);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_Oracle)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_TwJoin(benchmark::State& st) {
    Rng rng(3);
    auto inst = random_ktree_instance(rng, 120, 4, Problem::ECT);
    auto ntd = nicify(inst.td);
    TwOptions opt;
    opt.parallel = st.range(0) != 0;
    for (auto _ : st) {
        auto r = solve_tw(inst.g, ntd, Problem::ECT, opt);
        benchmark::DoNotOptimize(r.value);
    }
}
BENCHMARK(BM_TwJoin)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

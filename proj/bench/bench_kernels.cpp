// Serial reference against OpenMP kernels. Arg 0 = serial, 1 = parallel.

#include "rotsync/classifier.hpp"
#include "rotsync/fixtures.hpp"
#include "rotsync/random_dynamics.hpp"
#include "rotsync/reconstruct.hpp"

#include <benchmark/benchmark.h>

using namespace rotsync;

namespace {

Execution mode(const benchmark::State& state)
{
    return state.range(0) ? Execution::Parallel : Execution::Serial;
}

void BM_stationary(benchmark::State& state)
{
    auto sys = fixtures::generic_pair();
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_stationary(sys, Direction::Inverse, 1000, 2000, 1, mode(state)));
}
BENCHMARK(BM_stationary)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_spectrum(benchmark::State& state)
{
    auto sys = fixtures::generic_cover(2);
    for (auto _ : state)
        benchmark::DoNotOptimize(rotation_spectrum(sys, 200, 500, 1, mode(state)));
}
BENCHMARK(BM_spectrum)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_transfer(benchmark::State& state)
{
    auto sys = fixtures::generic_pair();
    Histogram h = Histogram::uniform(1024);
    for (auto _ : state)
        benchmark::DoNotOptimize(transfer_apply(sys, h, mode(state)));
}
BENCHMARK(BM_transfer)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_arc_mass(benchmark::State& state)
{
    auto sys = fixtures::generic_pair();
    ActionPair pair(sys, sys);
    ReconstructParams p;
    p.delta_samples = 200;
    p.execution = mode(state);
    MSFamily ms = find_ms_family(pair, 7, p);
    Word u;
    for (std::uint64_t t = 0; u.empty(); ++t) {
        Word c = sample_word(sys.nu(), 30, t);
        if (is_good(pair, ms, c, p))
            u = c;
    }
    ArcMassEstimator estimator(sys, ms, 0, p);
    for (auto _ : state)
        benchmark::DoNotOptimize(estimator(u, 3));
}
BENCHMARK(BM_arc_mass)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

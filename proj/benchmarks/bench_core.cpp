// Microbenchmarks for the hot paths: orbit enumeration, heat kernel and
// trace evaluation, and the zeta log-product. Run with --benchmark_filter=...
// to focus on one; enumeration dominates everything else by orders of
// magnitude, which is exactly why it is the one worth watching.

#include <benchmark/benchmark.h>

#include "selberg/group.hpp"
#include "selberg/heat.hpp"
#include "selberg/spectrum.hpp"
#include "selberg/zeta.hpp"

using namespace selberg;

namespace {

const LengthSpectrum& octagon_spectrum() {
    static LengthSpectrum s = [] {
        EnumerationOptions opts;
        opts.threads = 1;
        return enumerate_spectrum(builtin_octagon(), 7.0, 8, opts);
    }();
    return s;
}

void BM_EnumerateOctagon(benchmark::State& state) {
    GroupPresentation g = builtin_octagon();
    const double cutoff = static_cast<double>(state.range(0));
    EnumerationOptions opts;
    opts.threads = static_cast<int>(state.range(1));
    for (auto _ : state) {
        LengthSpectrum s =
            enumerate_spectrum(g, cutoff, static_cast<int>(cutoff) + 1, opts);
        benchmark::DoNotOptimize(s.entries.data());
        state.counters["visits"] = static_cast<double>(s.words_visited);
    }
}
BENCHMARK(BM_EnumerateOctagon)
    ->Args({7, 1})
    ->Args({7, 4})
    ->Args({9, 1})
    ->Args({9, 4})
    ->Unit(benchmark::kMillisecond);

void BM_EnumeratePinched(benchmark::State& state) {
    GroupPresentation g = build_genus2_from_fn(0.25, 2.0, 2.0, 0.0, 0.0, 0.0);
    EnumerationOptions opts;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        LengthSpectrum s = enumerate_spectrum(g, 6.0, 26, opts);
        benchmark::DoNotOptimize(s.entries.data());
    }
}
BENCHMARK(BM_EnumeratePinched)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_HeatKernel(benchmark::State& state) {
    const double t = 5.0;
    double rho = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(heat_kernel_h(t, rho));
        rho = rho < 10.0 ? rho + 0.01 : 0.0;
    }
}
BENCHMARK(BM_HeatKernel);

void BM_HeatTrace(benchmark::State& state) {
    const LengthSpectrum& s = octagon_spectrum();
    const double t = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(heat_trace(s, t, default_power_cap(s, t)).value);
    }
}
BENCHMARK(BM_HeatTrace)->Arg(3)->Arg(25)->Unit(benchmark::kMicrosecond);

void BM_ZetaLog(benchmark::State& state) {
    const LengthSpectrum& s = octagon_spectrum();
    const int k_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(selberg_zeta_log(s, 2.0, k_max).log_value);
    }
}
BENCHMARK(BM_ZetaLog)->Arg(40)->Arg(80)->Unit(benchmark::kMicrosecond);

void BM_ZetaDerivativeIntegral(benchmark::State& state) {
    const LengthSpectrum& s = octagon_spectrum();
    for (auto _ : state) {
        benchmark::DoNotOptimize(zeta_log_derivative_mckean(s, 2.0));
    }
}
BENCHMARK(BM_ZetaDerivativeIntegral)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

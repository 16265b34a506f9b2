#include <potcap/capacity.hpp>
#include <potcap/classify.hpp>
#include <potcap/green.hpp>
#include <potcap/measures.hpp>

#include <benchmark/benchmark.h>

#include <cmath>

using namespace potcap;

namespace {

const RadialMeasure& power_measure() {
    static const RadialMeasure m = builtin_power(3, 1.0);
    return m;
}

const RadialMeasure& log_measure() {
    static const RadialMeasure m = builtin_log(3, 3.0, 1.0);
    return m;
}

const GrowthFunction& log_growth() {
    static const GrowthFunction g = induced_growth(log_measure());
    return g;
}

void bm_exact_radial(benchmark::State& state) {
    const CapacityQuery q{2.0, 0.01, 1.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(exact_radial(power_measure(), q).value);
}
BENCHMARK(bm_exact_radial);

void bm_integral_estimate(benchmark::State& state) {
    const CapacityQuery q{2.0, 0.01, 1.0};
    for (auto _ : state)
        benchmark::DoNotOptimize(integral_estimate(log_growth(), q).value);
}
BENCHMARK(bm_integral_estimate);

void bm_variational(benchmark::State& state) {
    const CapacityQuery q{2.5, 0.5, 1.0};
    const int N = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(variational_radial(power_measure(), q, N).value);
}
BENCHMARK(bm_variational)->Arg(256)->Arg(1024);

void bm_green_value(benchmark::State& state) {
    GreenProfile prof(log_measure(), 2.0);
    prof.value(1e-6);  // warm the dyadic anchors; steady-state cost is what matters
    double rho = 1e-6;
    for (auto _ : state) {
        benchmark::DoNotOptimize(prof.value(rho));
        rho = rho < 0.5 ? rho * 1.3 : 1e-6;
    }
}
BENCHMARK(bm_green_value);

void bm_lnorm_u_shell(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(lnorm_u(power_measure(), 2.0, 1.0, NormMode::ForceNumeric));
}
BENCHMARK(bm_lnorm_u_shell);

void bm_green_in_Ltau(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(green_in_Ltau(log_growth(), 2.0, 3.0));
}
BENCHMARK(bm_green_in_Ltau);

}  // namespace

int main(int argc, char** argv) {
    benchmark::Initialize(&argc, argv);
    if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}

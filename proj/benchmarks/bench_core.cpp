#include <benchmark/benchmark.h>

#include "opqsl/opqsl.hpp"

namespace {

using namespace opqsl;

void BM_Eigh(benchmark::State& state) {
    const HermitianMatrix h = sample_goe({static_cast<int>(state.range(0)), 1.0, 1});
    for (auto _ : state) {
        Spectrum s = eigh(h);
        benchmark::DoNotOptimize(s.energies.data());
    }
}
BENCHMARK(BM_Eigh)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_CharFunction(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const auto [h, o] = sample_goe_pair({d, 1.0, 2}, 3);
    const Spectrum s = eigh(h);
    const WeightedGapDistribution g =
        compact(correlation_distribution(EnergyBasisOperator(o.matrix(), s.energies), gibbs(s, 0.1)));
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(char_function(g, t));
        t += 1e-3;
    }
    state.counters["gaps"] = static_cast<double>(g.size());
}
BENCHMARK(BM_CharFunction)->Arg(50)->Arg(200);

void BM_GoeAutocorrCurve(benchmark::State& state) {
    const auto [h, o] = sample_goe_pair({200, 1.0, 4}, 5);
    const Spectrum s = eigh(h);
    const EnergyBasisOperator op(o.matrix(), s.energies);
    const StationaryState rho = gibbs(s, 0.1);
    const TimeGrid grid(0.0, 0.2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        CorrelationCurve c = autocorr_curve(op, rho, grid);
        benchmark::DoNotOptimize(c.values.data());
    }
}
BENCHMARK(BM_GoeAutocorrCurve)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_Liouvillian(benchmark::State& state) {
    const HermitianMatrix h = sample_goe({static_cast<int>(state.range(0)), 1.0, 6});
    for (auto _ : state) {
        ComplexMatrix l = build_liouvillian(h);
        benchmark::DoNotOptimize(l.data());
    }
}
BENCHMARK(BM_Liouvillian)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();

// Serial reference kernels against their OpenMP versions.

#include <benchmark/benchmark.h>

#include <vector>

#include "dqo/core_model.hpp"
#include "dqo/drude_parameters.hpp"
#include "dqo/kernels.hpp"
#include "dqo/matsubara.hpp"
#include "dqo/spectral.hpp"

namespace {

const dqo::SystemSpec sys{1.0, 1.0, 2.5};
const dqo::BathSpec bath = dqo::BathSpec::drude(1.0, 10.0);

auto mean_term() {
    const dqo::MatsubaraGrid nu(dqo::ThermalState::from_alpha(sys, 0.5), 0);
    return [nu](std::size_t n) { return dqo::mean_energy_term_1d(sys, bath, nu(n)); };
}

auto pole_term() {
    const auto poles = dqo::invert_drude(sys, bath);
    const dqo::MatsubaraGrid nu(dqo::ThermalState::from_alpha(sys, 0.5), 0);
    return [poles, nu](std::size_t n) { return dqo::internal_energy_term_1d(poles, 10.0, nu(n)); };
}

void BM_sum_serial(benchmark::State& state) {
    const auto term = mean_term();
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dqo::kernels::serial::sum_descending<double>(1, N, term));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_sum_parallel(benchmark::State& state) {
    const auto term = mean_term();
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dqo::kernels::parallel::sum_descending<double>(1, N, term));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_complex_sum_serial(benchmark::State& state) {
    const auto term = pole_term();
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dqo::kernels::serial::sum_descending<dqo::complex>(1, N, term));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_complex_sum_parallel(benchmark::State& state) {
    const auto term = pole_term();
    const auto N = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dqo::kernels::parallel::sum_descending<dqo::complex>(1, N, term));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<double> grid(benchmark::State& state) {
    return dqo::log_grid(1e-3, 1e3, static_cast<std::size_t>(state.range(0)));
}

void BM_density_serial(benchmark::State& state) {
    const auto x = grid(state);
    const auto f = [](double w) { return dqo::p_E_3d(sys, bath, w); };
    for (auto _ : state) benchmark::DoNotOptimize(dqo::kernels::serial::evaluate(x, f));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_density_parallel(benchmark::State& state) {
    const auto x = grid(state);
    const auto f = [](double w) { return dqo::p_E_3d(sys, bath, w); };
    for (auto _ : state) benchmark::DoNotOptimize(dqo::kernels::parallel::evaluate(x, f));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_sum_serial)->RangeMultiplier(10)->Range(10000, 10000000)->UseRealTime();
BENCHMARK(BM_sum_parallel)->RangeMultiplier(10)->Range(10000, 10000000)->UseRealTime();
BENCHMARK(BM_complex_sum_serial)->RangeMultiplier(10)->Range(10000, 10000000)->UseRealTime();
BENCHMARK(BM_complex_sum_parallel)->RangeMultiplier(10)->Range(10000, 10000000)->UseRealTime();
BENCHMARK(BM_density_serial)->RangeMultiplier(10)->Range(1000, 1000000)->UseRealTime();
BENCHMARK(BM_density_parallel)->RangeMultiplier(10)->Range(1000, 1000000)->UseRealTime();

BENCHMARK_MAIN();

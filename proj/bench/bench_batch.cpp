// Serial reference vs OpenMP batch kernels. Run with OMP_NUM_THREADS set to
// compare scaling; results are identical either way.

#include "secondlaw/batch.hpp"
#include "secondlaw/channels.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace secondlaw;

std::vector<Trajectory> make_trajectories(std::size_t n) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> pop(0.02, 0.98);
    std::uniform_real_distribution<double> gamma(0.2, 3.0);
    std::vector<Trajectory> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double n0 = pop(rng);
        out.push_back(sample_relaxation(QuantumState::diagonal({n0, 1.0 - n0}), qubit_hamiltonian(2.0),
                                        ThermalContext(1.0), ThermalizationParams::markovian(gamma(rng)), 5.0, 1000));
    }
    return out;
}

std::vector<OttoConfig> make_configs(std::size_t n) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<OttoConfig> out(n);
    for (auto& c : out) {
        c.omega1 = 0.5 + u(rng);
        c.omega0 = c.omega1 * (1.2 + u(rng));
        c.Tc = 0.5 + u(rng);
        c.Th = c.Tc * (1.0 + 3.0 * u(rng));
        c.stroke_duration = 2.0 + 4.0 * u(rng);
    }
    return out;
}

void BM_SummarizeSerial(benchmark::State& state) {
    const auto trajs = make_trajectories(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::summarize_all_serial(trajs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SummarizeParallel(benchmark::State& state) {
    const auto trajs = make_trajectories(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::summarize_all(trajs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = batch::max_threads();
}

void BM_OttoSerial(benchmark::State& state) {
    const auto configs = make_configs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::run_otto_all_serial(configs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_OttoParallel(benchmark::State& state) {
    const auto configs = make_configs(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(batch::run_otto_all(configs));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.counters["threads"] = batch::max_threads();
}

}  // namespace

BENCHMARK(BM_SummarizeSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SummarizeParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OttoSerial)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OttoParallel)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

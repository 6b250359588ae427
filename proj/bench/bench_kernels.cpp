// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ffnn/backprop.hpp"
#include "ffnn/grad_oracle.hpp"

namespace {

using namespace ffnn;

NetworkShape wide_shape(std::size_t in, std::size_t hidden, std::size_t out) {
    return {in, {{hidden, ActivationKind::sigmoid(), true}, {out, ActivationKind::identity(), true}}};
}

Dataset random_dataset(std::size_t n, std::size_t in, std::size_t out) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Dataset data(n);
    for (auto& s : data) {
        s.input.resize(in);
        s.target.resize(out);
        for (double& v : s.input) v = u(rng);
        for (double& v : s.target) v = u(rng);
    }
    return data;
}

void BM_BatchGradientSerial(benchmark::State& state) {
    const Network net = init_random(wide_shape(32, 64, 10), TrainConfig{});
    const Dataset data = random_dataset(static_cast<std::size_t>(state.range(0)), 32, 10);
    for (auto _ : state) benchmark::DoNotOptimize(batch_gradient_serial(net, data));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_BatchGradientParallel(benchmark::State& state) {
    const Network net = init_random(wide_shape(32, 64, 10), TrainConfig{});
    const Dataset data = random_dataset(static_cast<std::size_t>(state.range(0)), 32, 10);
    for (auto _ : state) benchmark::DoNotOptimize(batch_gradient(net, data));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_FiniteDiffSerial(benchmark::State& state) {
    const auto h = static_cast<std::size_t>(state.range(0));
    const Network net = init_random(wide_shape(8, h, 4), TrainConfig{});
    const Sample s = random_dataset(1, 8, 4).front();
    for (auto _ : state) benchmark::DoNotOptimize(finite_diff_gradient_serial(net, s));
}

void BM_FiniteDiffParallel(benchmark::State& state) {
    const auto h = static_cast<std::size_t>(state.range(0));
    const Network net = init_random(wide_shape(8, h, 4), TrainConfig{});
    const Sample s = random_dataset(1, 8, 4).front();
    for (auto _ : state) benchmark::DoNotOptimize(finite_diff_gradient(net, s));
}

}  // namespace

BENCHMARK(BM_BatchGradientSerial)->Arg(64)->Arg(1024);
BENCHMARK(BM_BatchGradientParallel)->Arg(64)->Arg(1024);
BENCHMARK(BM_FiniteDiffSerial)->Arg(16)->Arg(64);
BENCHMARK(BM_FiniteDiffParallel)->Arg(16)->Arg(64);

BENCHMARK_MAIN();

#include "ellgen/genera.hpp"
#include "ellgen/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace ellgen;

namespace {

std::vector<Rational> random_series(std::size_t n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-50, 50);
    std::uniform_int_distribution<int> den(1, 30);
    std::vector<Rational> out(n);
    for (auto& c : out) {
        c = Rational(num(rng), den(rng));
        c.canonicalize();
    }
    return out;
}

void BM_CauchySerial(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_series(n, 1);
    const auto b = random_series(n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::cauchy_product_serial(a, b, n));
}

void BM_CauchyParallel(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = random_series(n, 1);
    const auto b = random_series(n, 2);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::cauchy_product_parallel(a, b, n));
}

void pair_setup(std::size_t n, kernels::SeriesBlock& left, kernels::SeriesBlock& right,
                std::vector<kernels::PairJob>& jobs)
{
    const std::size_t slots = 8;
    for (std::size_t i = 0; i < slots; ++i) {
        left.push_back(random_series(n, static_cast<unsigned>(10 + i)));
        right.push_back(random_series(n, static_cast<unsigned>(20 + i)));
    }
    for (std::size_t i = 0; i < slots; ++i)
        for (std::size_t j = 0; j < slots; ++j)
            jobs.push_back({i, j, (i + j) % slots});
}

void BM_PairSerial(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    kernels::SeriesBlock left, right;
    std::vector<kernels::PairJob> jobs;
    pair_setup(n, left, right, jobs);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::pair_products_serial(left, right, jobs, 8, n));
}

void BM_PairParallel(benchmark::State& state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    kernels::SeriesBlock left, right;
    std::vector<kernels::PairJob> jobs;
    pair_setup(n, left, right, jobs);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::pair_products_parallel(left, right, jobs, 8, n));
}

void BM_Pell1MatchedCp2(benchmark::State& state)
{
    const auto m = builtin_manifold("CP2");
    const auto x = LinearClass::generator(m.presentation, 0);
    const ProjBundle e({x, x, x}, LinearClass(m.presentation));
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(pell(m, e, GenusKind::PEll1, Method::ThetaProduct, n));
}

} // namespace

BENCHMARK(BM_CauchySerial)->Arg(40)->Arg(80)->Arg(160);
BENCHMARK(BM_CauchyParallel)->Arg(40)->Arg(80)->Arg(160);
BENCHMARK(BM_PairSerial)->Arg(20)->Arg(40);
BENCHMARK(BM_PairParallel)->Arg(20)->Arg(40);
BENCHMARK(BM_Pell1MatchedCp2)->Arg(20)->Arg(40);

BENCHMARK_MAIN();

#include <random>

#include <benchmark/benchmark.h>

#include "qst/causality_kernel.hpp"
#include "qst/kappa_poincare.hpp"
#include "qst/loop_calculus.hpp"
#include "qst/moyal_matrix.hpp"
#include "qst/wave_algebra.hpp"

namespace {

void group_addition(benchmark::State& state)
{
    const auto g = qst::kappa_group(1.0, 3);
    std::mt19937_64 rng(1);
    const auto p = qst::sample_momentum(g, rng);
    const auto q = qst::sample_momentum(g, rng);
    for (auto _ : state) benchmark::DoNotOptimize(g.add(p, q));
}
BENCHMARK(group_addition);

void bch_addition(benchmark::State& state)
{
    const auto g = qst::bch_group(qst::preset(qst::Preset::su2_lambda, 1.0, 3), static_cast<int>(state.range(0)));
    std::mt19937_64 rng(1);
    const auto p = qst::sample_momentum(g, rng);
    const auto q = qst::sample_momentum(g, rng);
    for (auto _ : state) benchmark::DoNotOptimize(g.add(p, q));
}
BENCHMARK(bch_addition)->Arg(4)->Arg(8);

void packet_star(benchmark::State& state)
{
    const auto g = qst::kappa_group(1.0, 3);
    std::mt19937_64 rng(2);
    qst::WavePacket f(g), h(g);
    for (int i = 0; i < state.range(0); ++i) {
        f.add_term(qst::sample_momentum(g, rng), 1.0);
        h.add_term(qst::sample_momentum(g, rng), 1.0);
    }
    for (auto _ : state) benchmark::DoNotOptimize(qst::star(f, h));
}
BENCHMARK(packet_star)->Arg(8)->Arg(32);

void kappa_poincare_axioms(benchmark::State& state)
{
    const qst::hopf::KappaPoincare kp;
    for (auto _ : state)
        for (const auto l : qst::hopf::generators()) benchmark::DoNotOptimize(kp.axioms(l).passed());
}
BENCHMARK(kappa_poincare_axioms)->Unit(benchmark::kMillisecond);

void matrix_basis_star(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    qst::moyal::TruncatedElement a(n, 1.0), b(n, 1.0);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) {
            a.set(m, k, {1.0 / (1 + m + k), 0.0});
            b.set(m, k, {0.0, 1.0 / (1 + m * k)});
        }
    for (auto _ : state) benchmark::DoNotOptimize(qst::moyal::star(a, b));
}
BENCHMARK(matrix_basis_star)->Arg(32)->Arg(64);

void bessel_oracle(benchmark::State& state)
{
    for (auto _ : state) benchmark::DoNotOptimize(qst::loop::kmink_wick_oracle(1.0, 1.0, 3));
}
BENCHMARK(bessel_oracle);

void cone_condition(benchmark::State& state)
{
    using namespace qst::causality;
    const auto grid = GridSpec::for_kappa(static_cast<int>(state.range(0)), 1.0);
    ConeOptions options;
    options.states = 50;
    for (auto _ : state) benchmark::DoNotOptimize(qst::causality::cone_condition(grid, 1.0, 1, 1.0, 0.5, options));
}
BENCHMARK(cone_condition)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

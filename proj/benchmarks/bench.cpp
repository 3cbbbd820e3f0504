// Microbenchmarks for the hot paths: matrix assembly, the QR eigensolver
// as a function of mode count, pairing/labeling, path scans, and the
// Fock-space Jacobi oracle.

#include "hbtk/oracle.hpp"
#include "hbtk/phase.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace hbtk;

namespace {

QuadraticHamiltonian random_model(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    auto h = QuadraticHamiltonian::zero(n);
    for (int i = 0; i < n; ++i) {
        h.omega[i] = 1.0 + std::abs(u(rng));
        h.chi[i] = cplx(u(rng), u(rng));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const cplx l(u(rng), u(rng));
            h.lam(i, j) = l;
            h.lam(j, i) = std::conj(l);
            const cplx g(u(rng), u(rng));
            h.g(i, j) = g;
            h.g(j, i) = g;
        }
    }
    return h;
}

void bm_build(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const auto h = random_model(rng, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build(h));
    }
}
BENCHMARK(bm_build)->Arg(2)->Arg(5)->Arg(10);

void bm_eigenvalues(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const auto m = build(random_model(rng, static_cast<int>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eigenvalues(m));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(bm_eigenvalues)->RangeMultiplier(2)->Range(1, 16)->Complexity();

void bm_pair_and_label(benchmark::State& state) {
    std::mt19937_64 rng(7);
    const auto h = random_model(rng, static_cast<int>(state.range(0)));
    const auto eigs = eigenvalues(build(h));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pair_and_label(eigs, h));
    }
}
BENCHMARK(bm_pair_and_label)->Arg(2)->Arg(5);

void bm_scan(benchmark::State& state) {
    ParamPath p;
    p.model_at = [](double chi) {
        return two_mode(1.0, 1.0, cplx(chi, 0), cplx(0, 0), cplx(0.6, 0), cplx(0.6, 0));
    };
    p.lo = 0.0;
    p.hi = 1.0;
    p.samples = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(scan(p));
    }
}
BENCHMARK(bm_scan)->Arg(101)->Arg(401);

void bm_fock_jacobi(benchmark::State& state) {
    const auto h = single_mode(1.0, cplx(0.6, 0.0));
    const int n_max = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::fock_diagonalize(h, n_max, 2));
    }
}
BENCHMARK(bm_fock_jacobi)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

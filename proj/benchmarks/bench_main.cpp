#include "bistab/exponents.hpp"
#include "bistab/identities.hpp"
#include "bistab/stability.hpp"

#include <benchmark/benchmark.h>

using namespace bistab;

static void BM_HValueExact(benchmark::State& state) {
    Rational gamma = rat(4, 3) + rat(1, 1000);
    for (auto _ : state) {
        Rational h = h_value(20, gamma);
        benchmark::DoNotOptimize(h);
    }
}
BENCHMARK(BM_HValueExact);

static void BM_ClearedPolynomial(benchmark::State& state) {
    for (auto _ : state) {
        IntPolynomial H = cleared_h_polynomial(static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(H);
    }
}
BENCHMARK(BM_ClearedPolynomial)->Arg(20)->Arg(100);

static void BM_SturmCount(benchmark::State& state) {
    IntPolynomial H = cleared_h_polynomial(20).primitive();
    for (auto _ : state) {
        int c = sturm_count(H, rat(4, 3), rat(3, 2));
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_SturmCount);

static void BM_PStar(benchmark::State& state) {
    Rational tol(1e-12);
    for (auto _ : state) {
        auto b = p_star(20, tol);
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_PStar);

static void BM_FeasibilitySample(benchmark::State& state) {
    Rational gamma = rat(6, 5), p = rat(13, 10);
    for (auto _ : state) {
        auto s = feasibility_sample(20, gamma, p);
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_FeasibilitySample);

static void BM_IdentityAudit(benchmark::State& state) {
    auto c = canonical_pairs(9, 1.25)[0];
    for (auto _ : state) {
        auto rep = verify_identity("2.6", c, 1e-6);
        benchmark::DoNotOptimize(rep);
    }
}
BENCHMARK(BM_IdentityAudit);

static void BM_RayleighQuotient(benchmark::State& state) {
    auto u = singular_solution(13, Rational(20));
    Profile phi = profiles::log_annulus(-4.5, 16.0, 1.0);
    QuadratureSpec spec;
    for (auto _ : state) {
        double q = rayleigh_quotient(u, phi, spec);
        benchmark::DoNotOptimize(q);
    }
}
BENCHMARK(BM_RayleighQuotient);

BENCHMARK_MAIN();

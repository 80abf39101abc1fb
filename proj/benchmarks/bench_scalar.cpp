#include <benchmark/benchmark.h>

#include "afl3/matrix.hpp"

using namespace afl3;

static void BM_ScalarMul(benchmark::State& state) {
    PrecisionContext ctx(5, state.range(0));
    Rng rng(1);
    QuadExtScalar a = sample_quadext_unit(ctx, rng);
    QuadExtScalar b = sample_quadext_unit(ctx, rng);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_ScalarMul)->Arg(20)->Arg(60)->Arg(200);

static void BM_ScalarInverse(benchmark::State& state) {
    PrecisionContext ctx(7, state.range(0));
    Rng rng(2);
    QuadExtScalar a = sample_quadext_unit(ctx, rng);
    for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_ScalarInverse)->Arg(20)->Arg(60)->Arg(200);

static void BM_MatrixConjugation(benchmark::State& state) {
    PrecisionContext ctx(5, 40);
    Rng rng(3);
    MatrixF y = sample_lie_s_integral(ctx, 3, rng);
    MatrixF h = embed_upper_left(ctx, sample_gl_f(ctx, 2, rng), 3);
    for (auto _ : state) benchmark::DoNotOptimize(h * y * h.inverse());
}
BENCHMARK(BM_MatrixConjugation);

static void BM_Charpoly(benchmark::State& state) {
    PrecisionContext ctx(5, 40);
    Rng rng(4);
    MatrixF y = sample_matrix_integral(ctx, 3, rng);
    for (auto _ : state) benchmark::DoNotOptimize(y.charpoly(ctx));
}
BENCHMARK(BM_Charpoly);

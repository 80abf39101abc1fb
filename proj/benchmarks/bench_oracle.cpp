#include <benchmark/benchmark.h>

#include "afl3/canonical.hpp"
#include "afl3/lengths.hpp"

using namespace afl3;

static void BM_CellBrute(benchmark::State& state) {
    PrecisionContext ctx(5, 40);
    CanonicalInstance inst = make_instance(ctx, Parity::odd, 2, 1, 2, 1);
    MatrixF y = build_match_y(inst);
    long t = state.range(0);
    OracleOptions opt;
    opt.enum_threshold = 100'000'000; // force enumeration
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_cell_count(y, inst.coset_shape(), 2, t, ctx, opt));
}
BENCHMARK(BM_CellBrute)->Arg(3)->Arg(5)->Arg(7);

static void BM_CellAnalytic(benchmark::State& state) {
    PrecisionContext ctx(5, 40);
    CanonicalInstance inst = make_instance(ctx, Parity::odd, 2, 1, 2, 1);
    MatrixF y = build_match_y(inst);
    long t = state.range(0);
    OracleOptions opt;
    opt.enum_threshold = 1; // force the analytic counter
    for (auto _ : state)
        benchmark::DoNotOptimize(oracle_cell_count(y, inst.coset_shape(), 2, t, ctx, opt));
}
BENCHMARK(BM_CellAnalytic)->Arg(3)->Arg(5)->Arg(7)->Arg(12);

static void BM_FullInstance(benchmark::State& state) {
    PrecisionContext ctx(5, 40);
    CanonicalInstance inst = make_instance(ctx, Parity::odd, state.range(0), 1, 1, 1);
    for (auto _ : state) {
        long long oracle = analytic_side_oracle(inst, {});
        long long closed = analytic_side_closed(inst.shape());
        long long geo = geometric_side(inst.shape()).total;
        if (oracle != closed || closed != geo) state.SkipWithError("identity failed");
        benchmark::DoNotOptimize(oracle);
    }
}
BENCHMARK(BM_FullInstance)->Arg(0)->Arg(1)->Arg(2);

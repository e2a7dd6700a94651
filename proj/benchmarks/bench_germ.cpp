#include "germ/asymptotics.hpp"
#include "germ/lchart.hpp"
#include "germ/oracle.hpp"
#include "germ/selftest.hpp"

#include <benchmark/benchmark.h>

using namespace germ;

namespace {

const char *const kTerms[] = {
    "x + exp(-x)",
    "(exp(1/x) - 1)*x",
    "exp(x*log(1 + 1/x))",
    "log(x)/log_3(x) * (1/log(x))",
    "exp(exp(x) + x) - exp(exp(x))",
    "exp(log(x)^2)/x^20",
};

void BM_Parse(benchmark::State &state)
{
    const char *s = kTerms[state.range(0)];
    for (auto _ : state)
        benchmark::DoNotOptimize(parse(s));
}
BENCHMARK(BM_Parse)->DenseRange(0, 5);

// a fresh engine per iteration so cached results do not leak between runs
void BM_Limit(benchmark::State &state)
{
    Term t = parse(kTerms[state.range(0)]);
    for (auto _ : state) {
        Asymptotics eng;
        benchmark::DoNotOptimize(eng.limit(t));
    }
}
BENCHMARK(BM_Limit)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);

void BM_Eh(benchmark::State &state)
{
    Term t = parse(kTerms[state.range(0)]);
    for (auto _ : state) {
        Asymptotics eng;
        benchmark::DoNotOptimize(eng.eh(t));
    }
}
BENCHMARK(BM_Eh)->DenseRange(0, 5)->Unit(benchmark::kMicrosecond);

void BM_LimitPrecision(benchmark::State &state)
{
    Term t = parse("(exp(1/x) - 1 - 1/x)*x^2");
    EngineOptions o;
    o.precision = state.range(0);
    for (auto _ : state) {
        Asymptotics eng(o);
        benchmark::DoNotOptimize(eng.limit(t));
    }
}
BENCHMARK(BM_LimitPrecision)->RangeMultiplier(4)->Range(64, 4096)->Unit(benchmark::kMicrosecond);

void BM_NumericLimit(benchmark::State &state)
{
    Term t = parse("(exp(1/x) - 1)*x");
    for (auto _ : state)
        benchmark::DoNotOptimize(numeric_limit(t, default_grid(), state.range(0)));
}
BENCHMARK(BM_NumericLimit)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);

void BM_NumericLevel(benchmark::State &state)
{
    Term t = parse("exp(x^2)");
    for (auto _ : state)
        benchmark::DoNotOptimize(numeric_level(t));
}
BENCHMARK(BM_NumericLevel)->Unit(benchmark::kMillisecond);

void BM_EvalPath(benchmark::State &state)
{
    Term t = parse("x^(3/2)*log(x) + exp(x^(1/2))");
    std::vector<LPoint> path;
    for (int i = 0; i < state.range(0); ++i)
        path.push_back({4.0, 1.5 * i / state.range(0)});
    for (auto _ : state)
        benchmark::DoNotOptimize(eval_along_path(t, path));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EvalPath)->Arg(16)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_CheckExpansive(benchmark::State &state)
{
    CheckParams p;
    p.pairs = static_cast<int>(state.range(0));
    DomainSpec half{parse("pi/2"), 1.0};
    Term f = parse("exp(x)");
    for (auto _ : state)
        benchmark::DoNotOptimize(check_expansive(f, half, p));
}
BENCHMARK(BM_CheckExpansive)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_Criterion(benchmark::State &state)
{
    SelftestOptions o;
    for (auto _ : state)
        benchmark::DoNotOptimize(run_criterion(static_cast<int>(state.range(0)), o));
}
BENCHMARK(BM_Criterion)->DenseRange(1, 10)->Unit(benchmark::kMillisecond)->Iterations(1);

} // namespace

BENCHMARK_MAIN();

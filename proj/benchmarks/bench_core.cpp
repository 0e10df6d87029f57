#include <benchmark/benchmark.h>

#include "solder/chart.hpp"
#include "solder/scalar_parser.hpp"
#include "solder/tensor.hpp"
#include "solder/structures.hpp"
#include "solder/submanifold.hpp"
#include "solder/lifts.hpp"
#include "solder/examples.hpp"
#include "solder/script.hpp"

using namespace solder;

namespace {

ChartPtr canonical_chart() {
    return Chart::make("C", {{"x1", false}, {"xs1", false}, {"y1", false}, {"ys1", false}});
}

Multivector canonical_pi(const ChartPtr& c) {
    auto pi = Multivector::zero(c, 2);
    pi.set_component({0, 1}, Scalar::constant(c, Rational(1)));
    pi.set_component({2, 3}, Scalar::constant(c, Rational(1)));
    return pi;
}

JacobiPair slice_pair() {
    auto c = Chart::make("M", {{"u1", false}, {"q1", false}, {"p1", false}, {"t", false}});
    auto lam = Multivector::zero(c, 2);
    lam.set_component({1, 2}, Scalar::variable(c, 0));
    lam.add_term({3, 2},
                 Scalar::variable(c, 3) * Scalar::variable(c, 2));
    auto e = Multivector::zero(c, 1);
    e.set_component({3}, Scalar::variable(c, 3));
    return JacobiPair::make(lam, e);
}

void bench_schouten(benchmark::State& state) {
    auto c = canonical_chart();
    auto pi = canonical_pi(c);
    auto q = Multivector::zero(c, 2);
    q.set_component({0, 2}, Scalar::variable(c, 1) * Scalar::variable(c, 3));
    q.set_component({1, 3}, Scalar::variable(c, 0));
    for (auto _ : state) {
        auto br = schouten(pi, q);
        benchmark::DoNotOptimize(br);
    }
}
BENCHMARK(bench_schouten);

void bench_classify(benchmark::State& state) {
    auto pair = slice_pair();
    auto sub = NormalizedSubmanifold::make_by_name(pair.chart(), {{"t", Rational(0)}});
    for (auto _ : state) {
        auto flags = classify_jacobi(pair, sub);
        benchmark::DoNotOptimize(flags);
    }
}
BENCHMARK(bench_classify);

void bench_poissonize(benchmark::State& state) {
    auto pair = slice_pair();
    for (auto _ : state) {
        auto hom = poissonize(pair);
        benchmark::DoNotOptimize(hom);
    }
}
BENCHMARK(bench_poissonize);

void bench_parse_script(benchmark::State& state) {
    auto text = builtin_example("homogeneous-slice");
    for (auto _ : state) {
        auto script = parse_script(text);
        benchmark::DoNotOptimize(script);
    }
}
BENCHMARK(bench_parse_script);

void bench_tangent_jacobi(benchmark::State& state) {
    auto pair = slice_pair();
    for (auto _ : state) {
        auto tj = tangent_jacobi(pair);
        benchmark::DoNotOptimize(tj);
    }
}
BENCHMARK(bench_tangent_jacobi);

}  // namespace

BENCHMARK_MAIN();

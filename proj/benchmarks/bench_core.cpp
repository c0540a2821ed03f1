// Benchmarks for the three hot paths: exact facet/lattice construction,
// Monte Carlo angle sampling, and the exact angle-sum recursion.

#include "polyangle/angles.hpp"
#include "polyangle/construction.hpp"
#include "polyangle/geometry.hpp"
#include "polyangle/spans.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace polyangle;

void BM_FacetEnumerationCube(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    std::vector<Point> vertices = cube(d).vertices();
    for (auto _ : state) {
        benchmark::DoNotOptimize(VPolytope::from_vertices(vertices));
    }
}
BENCHMARK(BM_FacetEnumerationCube)->DenseRange(2, 4);

void BM_FacetEnumerationCyclic(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::vector<Point> vertices = cyclic_polytope(4, n).vertices();
    for (auto _ : state) {
        benchmark::DoNotOptimize(VPolytope::from_vertices(vertices));
    }
}
BENCHMARK(BM_FacetEnumerationCyclic)->DenseRange(6, 8);

void BM_AngleSamplingTetra(benchmark::State& state) {
    const VPolytope p = regular_tetrahedron();
    EstimateOptions opts;
    opts.samples_per_face = state.range(0);
    opts.seed = 7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(alpha_vector_estimate(p, opts));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AngleSamplingTetra)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_AngleSamplingCyclic46(benchmark::State& state) {
    const VPolytope p = cyclic_polytope(4, 6);
    EstimateOptions opts;
    opts.samples_per_face = 10000;
    opts.seed = 7;
    opts.threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(alpha_vector_estimate(p, opts));
    }
}
BENCHMARK(BM_AngleSamplingCyclic46)->Arg(1)->Arg(2)->Arg(4);

void BM_ExactAlphaRecursion(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    const std::vector<ConstructionExpr> family = general_span_family(d);
    for (auto _ : state) {
        for (const ConstructionExpr& e : family) {
            benchmark::DoNotOptimize(exact_alpha_f(e));
        }
    }
}
BENCHMARK(BM_ExactAlphaRecursion)->DenseRange(3, 8);

void BM_ExactSpanVerdict(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            verify_general_span(d, ScalarMode::Exact, SpanOptions{}));
    }
}
BENCHMARK(BM_ExactSpanVerdict)->DenseRange(3, 6);

}  // namespace

BENCHMARK_MAIN();

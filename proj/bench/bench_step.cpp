// Serial reference step against the OpenMP kernel on a wide stencil.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "nlcl/stepper.hpp"

namespace {

nlcl::GridState make_state(long n) {
    const nlcl::GridGeometry geometry{0.0, 1.0 / static_cast<double>(n), n, nlcl::Boundary::Periodic};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = std::sin(6.283185307179586 * j / n);
    return nlcl::GridState(geometry, std::move(v));
}

template <bool Parallel>
void BM_Step(benchmark::State& bench) {
    const long n = bench.range(0);
    const long r = bench.range(1);
    const nlcl::GridState state = make_state(n);
    const nlcl::Kernel kernel(nlcl::Profile::Uniform, static_cast<double>(r) * state.dx());
    const nlcl::QuadratureWeights w = nlcl::compute_weights(kernel, state.dx());
    const auto flux = nlcl::TwoPointFlux::godunov(nlcl::LocalFlux::burgers());
    const double dt = 0.4 * state.dx();
    for (auto _ : bench) {
        auto next = Parallel ? nlcl::step(state, w, flux, dt) : nlcl::step_reference(state, w, flux, dt);
        benchmark::DoNotOptimize(next.values().data());
    }
    bench.SetItemsProcessed(bench.iterations() * n * r);
}

}  // namespace

BENCHMARK(BM_Step<false>)->Name("step_reference")->Args({1 << 14, 1})->Args({1 << 14, 16})->Args({1 << 14, 64});
BENCHMARK(BM_Step<true>)->Name("step_openmp")->Args({1 << 14, 1})->Args({1 << 14, 16})->Args({1 << 14, 64});

BENCHMARK_MAIN();

#include "qmap/directions.hpp"
#include "qmap/hyperhermitian.hpp"
#include "qmap/regularity.hpp"
#include "qmap/solver.hpp"
#include "qmap/stencil.hpp"

#include <benchmark/benchmark.h>

#include <random>

using namespace qmap;

namespace {

HyperhermitianQ random_positive(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> e(-3, 3);
    QuatMatrix<Rational> g(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            g(j, k) = QuatQ(Rational(e(rng)), Rational(e(rng)), Rational(e(rng)), Rational(e(rng)));
    for (std::size_t j = 0; j < n; ++j) g(j, j) += QuatQ(Rational(8));
    return HyperhermitianQ::gram(g);
}

BellmanScheme scheme_at(double h, const char* psi) {
    const auto lat = make_lattice(make_ball(1, 1.0, h, psi, "1"));
    const auto samples = make_operator_samples(sample_directions(1, {16, 1, 0.5}), h, {2, 1.0472});
    return BellmanScheme(lat, samples, [lat](std::span<const double> x) { return lat->spec().psi.evaluate(x); });
}

void BM_MooreDet(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const HyperhermitianQ m = random_positive(n, 5);
    for (auto _ : state) benchmark::DoNotOptimize(moore_det(m));
}
BENCHMARK(BM_MooreDet)->DenseRange(1, 4);

void BM_BellmanSweep(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    const BellmanScheme scheme = scheme_at(h, "0");
    const GridFunction u = scheme.with_boundary(GridFunction(scheme.lattice_ptr(), 0.0));
    const auto& interior = scheme.lattice().interior();
    for (auto _ : state) {
        double acc = 0.0;
        for (std::size_t k : interior)
            for (std::size_t s = 0; s < scheme.samples().size(); ++s) acc += scheme.apply(u, k, s);
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * interior.size() * scheme.samples().size()));
}
BENCHMARK(BM_BellmanSweep)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Modulus(benchmark::State& state) {
    const double h = 1.0 / static_cast<double>(state.range(0));
    const BellmanScheme scheme = scheme_at(h, "abs(x0)");
    SolverOptions o;
    o.omega = 1.7;
    const GridFunction u = scheme.with_boundary(bellman_solve_dirichlet(scheme, o).u);
    std::vector<double> ts;
    for (int m = 1; m <= 16; ++m) ts.push_back(std::sqrt(m) * h);
    for (auto _ : state) benchmark::DoNotOptimize(modulus_of_continuity(u, ts, {std::size_t{1} << 40, 1}));
}
BENCHMARK(BM_Modulus)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();

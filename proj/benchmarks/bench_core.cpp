#include <benchmark/benchmark.h>

#include "gentleq/divergences.hpp"
#include "gentleq/learning.hpp"

using namespace gentleq;

namespace {

ComplexMatrix random_hermitian(int dim, RandomStream& rng) {
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
        m(r, r) = Complex(rng.gaussian(), 0.0);
        for (int c = r + 1; c < dim; ++c) {
            const Complex value(rng.gaussian(), rng.gaussian());
            m(r, c) = value;
            m(c, r) = std::conj(value);
        }
    }
    return m;
}

void BM_HermitianEig(benchmark::State& state) {
    RandomStream rng(1, 0);
    const ComplexMatrix h = random_hermitian(static_cast<int>(state.range(0)), rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eig(h));
    }
}
BENCHMARK(BM_HermitianEig)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_QlsSampleOutcome(benchmark::State& state) {
    RandomStream rng(2, 0);
    const Measurement qls = qls_qubit(Axis::Z, 0.3);
    const DensityMatrix rho = bloch_to_density({0.2, 0.1, 0.5});
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_outcome(qls, rho, rng));
    }
}
BENCHMARK(BM_QlsSampleOutcome);

void BM_WorstCaseDisturbanceSample(benchmark::State& state) {
    RandomStream rng(3, 0);
    const Measurement qls = qls_qubit(Axis::Z, 0.3);
    for (auto _ : state) {
        const PureState psi = sample_haar_pure(2, rng);
        benchmark::DoNotOptimize(pure_state_disturbance(qls, psi, 0));
    }
}
BENCHMARK(BM_WorstCaseDisturbanceSample);

void BM_Tomography(benchmark::State& state) {
    RandomStream rng(4, 0);
    const DensityMatrix rho = bloch_to_density({0.6, 0.0, 0.8});
    const long n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tomography(rho, n, 0.3, rng));
    }
    state.SetItemsProcessed(state.iterations() * n * 3);
}
BENCHMARK(BM_Tomography)->Arg(3000)->Arg(30000);

void BM_SymKl(benchmark::State& state) {
    RandomStream rng(5, 0);
    const DensityMatrix rho0 = bloch_to_density({0.3, 0.0, 0.2});
    const DensityMatrix rho1 = bloch_to_density({-0.1, 0.4, 0.0});
    const Measurement np = gentle_np_measurement(rho0, rho1, 0.2);
    const OutcomeDistribution p0 = outcome_distribution(np, rho0);
    const OutcomeDistribution p1 = outcome_distribution(np, rho1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sym_kl(p0, p1));
    }
}
BENCHMARK(BM_SymKl);

} // namespace

BENCHMARK_MAIN();

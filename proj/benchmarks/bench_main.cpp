#include <numbers>

#include <benchmark/benchmark.h>

#include "densfluct/collective_spin.hpp"
#include "densfluct/exact_lattice.hpp"
#include "densfluct/ising_entangle.hpp"
#include "densfluct/magnus.hpp"
#include "densfluct/nonequil_observables.hpp"
#include "densfluct/special_functions.hpp"

using namespace densfluct;
using std::numbers::pi;

static void BM_WignerColumn(benchmark::State& state) {
  const int twice_s = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(collective::wigner_column(HalfInt(twice_s), HalfInt(0), pi / 2));
}
BENCHMARK(BM_WignerColumn)->Arg(200)->Arg(2000)->Arg(4000)->Unit(benchmark::kMillisecond);

static void BM_EigenweightDistribution(benchmark::State& state) {
  const int twice_s = static_cast<int>(state.range(0));
  const SpinSector sector(twice_s, HalfInt(twice_s), HalfInt(0));
  for (auto _ : state) benchmark::DoNotOptimize(collective::eigenweight_distribution(sector, pi / 2));
}
BENCHMARK(BM_EigenweightDistribution)->Arg(200)->Arg(2000)->Unit(benchmark::kMillisecond);

static void BM_BuildSpinHamiltonian(benchmark::State& state) {
  const auto lat = lattice::LatticeSpec::all_to_all(static_cast<int>(state.range(0)), 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(lattice::build_spin_hamiltonian(lat));
}
BENCHMARK(BM_BuildSpinHamiltonian)->DenseRange(6, 12, 2)->Unit(benchmark::kMillisecond);

static void BM_EvolverApply(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  lattice::Evolver ev(lattice::LatticeSpec::all_to_all(n, 1.0, 1.0), DriveMode::Replace);
  const auto psi = lattice::dicke_state(n, HalfInt(n % 2)).amplitudes();
  ev.apply(psi, 1.0, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(ev.apply(psi, 1.0, 0.7));
}
BENCHMARK(BM_EvolverApply)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

static void BM_MagnusError(benchmark::State& state) {
  const auto lat = lattice::LatticeSpec::chain(static_cast<int>(state.range(0)), 1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(magnus::magnus_error(lat, magnus::two_segment_schedule(0.01, 1.0), 0.01));
}
BENCHMARK(BM_MagnusError)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_HypergeometricCorrelator(benchmark::State& state) {
  const int l = static_cast<int>(state.range(0));
  const ising::DomainWallEnsemble e{l, l / 4, 1.0};
  for (auto _ : state) benchmark::DoNotOptimize(ising::correlator_hypergeometric(e, 3));
}
BENCHMARK(BM_HypergeometricCorrelator)->Arg(40)->Arg(320);

static void BM_DickeEntropy(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(ising::dicke_entanglement({n, HalfInt(0), n / 2}, ising::EntropyMethod::Exact));
}
BENCHMARK(BM_DickeEntropy)->Arg(64)->Arg(1024);

static void BM_Erfc(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(special::erfc(x));
    x = x < 30.0 ? x + 0.01 : 0.0;
  }
}
BENCHMARK(BM_Erfc);

static void BM_SmearedPlanck(benchmark::State& state) {
  const auto kernel = nonequil::SmearKernel::gaussian(1.0, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(nonequil::smeared_planck(2.0, kernel));
}
BENCHMARK(BM_SmearedPlanck);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mblent/freefermion.hpp"
#include "mblent/lbit.hpp"
#include "mblent/model.hpp"
#include "mblent/observables.hpp"
#include "mblent/propagator.hpp"

using namespace mblent;

namespace {

ModelParams params(int L) {
  ModelParams p;
  p.L = L;
  p.delta = 3.0;
  p.V = 1.0;
  p.phi = 0.4;
  return p;
}

void BM_BuildHamiltonian(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const SectorBasis basis(L);
  for (auto _ : state) benchmark::DoNotOptimize(build_hamiltonian(params(L), basis));
  state.counters["dim"] = static_cast<double>(basis.size());
}
BENCHMARK(BM_BuildHamiltonian)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_KrylovUnitTime(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  auto basis = build_sector_basis(L);
  const SparseHamiltonian H = build_hamiltonian(params(L), *basis);
  KrylovConfig cfg;
  cfg.dt = 0.25;
  const Eigen::VectorXcd psi0 = neel_state(basis).amplitudes();
  for (auto _ : state) {
    Eigen::VectorXcd v = psi0;
    propagate(H, v, 1.0, cfg);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(BM_KrylovUnitTime)->Arg(12)->Arg(14)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_TwoSiteRdm(benchmark::State& state) {
  auto basis = build_sector_basis(16);
  const SectorState neel = neel_state(basis);
  for (auto _ : state) benchmark::DoNotOptimize(two_site_rdm(neel, 7, 9));
}
BENCHMARK(BM_TwoSiteRdm);

void BM_CorrelationEvolve(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  ModelParams p = params(L);
  p.V = 0.0;
  const CorrelationPropagator prop(SingleParticleHamiltonian::from_params(p));
  const CorrelationMatrix G0 = neel_correlations(L);
  double t = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(prop.evolve(G0, t += 0.5));
}
BENCHMARK(BM_CorrelationEvolve)->Arg(24)->Arg(96);

void BM_LbitRdm(benchmark::State& state) {
  std::mt19937_64 rng(5);
  LbitParams lp;
  const LbitInstance inst = sample_instance(lp, rng);
  const LbitProductState st = sample_product_state(lp.L, rng);
  for (auto _ : state) benchmark::DoNotOptimize(lbit_two_site_rdm(inst, st, 30, 31, 100.0));
}
BENCHMARK(BM_LbitRdm);

void BM_Wootters(benchmark::State& state) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  Eigen::Matrix4cd A;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) A(i, j) = Complex(g(rng), g(rng));
  Eigen::Matrix4cd rho = A * A.adjoint();
  rho /= rho.trace().real();
  const TwoSiteRDM r(rho);
  for (auto _ : state) benchmark::DoNotOptimize(wootters_concurrence(r));
}
BENCHMARK(BM_Wootters);

}  // namespace

BENCHMARK_MAIN();

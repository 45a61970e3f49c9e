#include <benchmark/benchmark.h>

#include "spinglass/ground_state.hpp"
#include "spinglass/observables.hpp"
#include "spinglass/quench.hpp"

using namespace spinglass;

namespace {

HamiltonianOperator glass_chain(int sites) {
  const Boundary boundary = sites <= 7 ? Boundary::Periodic : Boundary::Open;
  ModelParams params{sites, 0.7, 0.8, boundary};
  DisorderCase glass{DisorderKind::Both, 0.7, -1.125, 1.0, 1.0};
  return HamiltonianOperator(params, sample_couplings(glass, params, 12345));
}

void BM_ApplyHamiltonian(benchmark::State& state) {
  const auto h = glass_chain(static_cast<int>(state.range(0)));
  Eigen::VectorXd v = Eigen::VectorXd::Random(h.dimension());
  Eigen::VectorXd out(v.size());
  for (auto _ : state) {
    h.apply(v, out);
    benchmark::DoNotOptimize(out.data());
    std::swap(v, out);
  }
  state.SetItemsProcessed(state.iterations() * h.dimension());
}
BENCHMARK(BM_ApplyHamiltonian)->Arg(10)->Arg(12)->Arg(14)->Arg(16)->Arg(18);

void BM_DenseGroundState(benchmark::State& state) {
  const auto h = glass_chain(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    const GroundStateResult result = dense_ground_state(h, 12);
    benchmark::DoNotOptimize(result.energy);
  }
}
BENCHMARK(BM_DenseGroundState)->Arg(6)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_LanczosGroundState(benchmark::State& state) {
  const auto h = glass_chain(static_cast<int>(state.range(0)));
  LanczosOptions options;
  options.seed = 7;
  options.tol = 1e-10;
  for (auto _ : state) {
    const GroundStateResult result = lanczos_ground_state(h, options);
    benchmark::DoNotOptimize(result.energy);
  }
}
BENCHMARK(BM_LanczosGroundState)->Arg(8)->Arg(10)->Arg(12)->Arg(14)
    ->Unit(benchmark::kMillisecond);

void BM_ReducedDensityMatrix(benchmark::State& state) {
  const auto h = glass_chain(12);
  const GroundStateResult ground = lanczos_ground_state(h, {});
  const int keep[2] = {5, 6};
  for (auto _ : state) {
    const ReducedDensityMatrix rdm = reduced_density_matrix(ground.state, keep);
    benchmark::DoNotOptimize(rdm.matrix.data());
  }
}
BENCHMARK(BM_ReducedDensityMatrix);

void BM_Ggm(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const auto h = glass_chain(sites);
  const GroundStateResult ground =
      sites <= 8 ? dense_ground_state(h, 12) : lanczos_ground_state(h, {});
  for (auto _ : state) {
    const double value = ggm(ground.state);
    benchmark::DoNotOptimize(value);
  }
}
BENCHMARK(BM_Ggm)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_GgmApprox(benchmark::State& state) {
  const int sites = static_cast<int>(state.range(0));
  const auto h = glass_chain(sites);
  const GroundStateResult ground =
      sites <= 8 ? dense_ground_state(h, 12) : lanczos_ground_state(h, {});
  for (auto _ : state) {
    const double value = ggm_approx(ground.state, h.params());
    benchmark::DoNotOptimize(value);
  }
}
BENCHMARK(BM_GgmApprox)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_QuenchedPoint(benchmark::State& state) {
  ModelParams params{6, 0.7, 0.8, Boundary::Periodic};
  DisorderCase glass{DisorderKind::Both, 0.7, -1.125, 1.0, 1.0};
  QuenchSettings settings;
  settings.realizations = 100;
  settings.convergence_window = 50;
  settings.threads = 1;
  for (auto _ : state) {
    const QuenchedSet result = quenched_average(params, glass, settings);
    benchmark::DoNotOptimize(result.estimates[0].mean);
  }
}
BENCHMARK(BM_QuenchedPoint)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

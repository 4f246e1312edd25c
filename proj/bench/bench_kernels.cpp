// Serial reference against the OpenMP kernels on a d = 3 grid.
#include <benchmark/benchmark.h>

#include <random>

#include "cahnlab/dynamics.hpp"
#include "cahnlab/kernels.hpp"
#include "cahnlab/mollifier.hpp"

using namespace cahnlab;

namespace {

Field noise(const GridPtr& grid) {
  std::mt19937_64 rng(3);
  Field f(grid);
  for (double& v : f.mutable_values()) v = 0.5 + 0.1 * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
  return f;
}

template <bool Parallel>
void BM_PotentialDerivative(benchmark::State& state) {
  const auto grid = TorusGrid::make(3, static_cast<int>(state.range(0)));
  const Field u = noise(grid);
  const auto p = Potential::shifted_quartic();
  std::vector<double> out(grid->size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::omp::potential_derivative(p, u.values(), out);
    else
      kernels::serial::potential_derivative(p, u.values(), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid->size()));
}

template <bool Parallel>
void BM_PotentialSum(benchmark::State& state) {
  const auto grid = TorusGrid::make(3, static_cast<int>(state.range(0)));
  const Field u = noise(grid);
  const auto p = Potential::shifted_quartic();
  for (auto _ : state) {
    double s = Parallel ? kernels::omp::potential_sum(p, u.values()) : kernels::serial::potential_sum(p, u.values());
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid->size()));
}

template <bool Parallel>
void BM_SemiImplicitUpdate(benchmark::State& state) {
  const auto grid = TorusGrid::make(3, static_cast<int>(state.range(0)));
  const Field u = noise(grid);
  const auto u_hat = u.spectral();
  std::vector<Complex> w_hat(u_hat.begin(), u_hat.end()), out(grid->spectral_size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::omp::semi_implicit_update(u_hat, w_hat, grid->k_squared(), grid->k_squared(), 1e-5, 1.0, out);
    else
      kernels::serial::semi_implicit_update(u_hat, w_hat, grid->k_squared(), grid->k_squared(), 1e-5, 1.0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_CosineSymbol(benchmark::State& state) {
  const auto grid = TorusGrid::make(3, 32);
  const auto K = build_kernel(normalize_mollifier(1.0, 3), 0.2, grid);
  std::vector<kernels::SupportPoint> support;
  for (std::size_t i = 0; i < grid->size(); ++i) {
    const Vec3 z = grid->minimal_offset(i);
    if (K.samples()[i] > 0.0 && (z[0] > 0.0 || (z[0] == 0.0 && (z[1] > 0.0 || (z[1] == 0.0 && z[2] > 0.0)))))
      support.push_back({z, 2.0 * K.samples()[i]});
  }
  std::vector<double> diff(grid->spectral_size()), conv(grid->spectral_size());
  for (auto _ : state) {
    if constexpr (Parallel)
      kernels::omp::cosine_symbol(support, 0.0, grid->wavevectors(), grid->cell_volume(), diff, conv);
    else
      kernels::serial::cosine_symbol(support, 0.0, grid->wavevectors(), grid->cell_volume(), diff, conv);
    benchmark::DoNotOptimize(diff.data());
  }
}

void BM_LocalStep(benchmark::State& state) {
  const auto grid = TorusGrid::make(3, static_cast<int>(state.range(0)));
  Field u = noise(grid);
  SolverConfig cfg;
  Stepper stepper(Scheme::local(grid), Potential::shifted_quartic(), cfg);
  for (auto _ : state) stepper.step(u);
}

}  // namespace

BENCHMARK(BM_PotentialDerivative<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_PotentialDerivative<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_PotentialSum<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_PotentialSum<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_SemiImplicitUpdate<false>)->Arg(32)->Arg(64);
BENCHMARK(BM_SemiImplicitUpdate<true>)->Arg(32)->Arg(64);
BENCHMARK(BM_CosineSymbol<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CosineSymbol<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LocalStep)->Arg(32)->Arg(64);

BENCHMARK_MAIN();

// Serial reference vs OpenMP kernels on the baseline medium.
#include <random>

#include <benchmark/benchmark.h>

#include "nlqed/coupling.hpp"
#include "nlqed/kernels.hpp"

using namespace nlqed;

namespace {

Geometry1D medium() {
  return Geometry1D::homogeneous(
      2.0, {"medium", PermittivityModel::lorentz(2.0, {{2.0, 3.0, 0.2}}), Chi2Model::constant({0.5, 0.0})});
}

std::vector<Complex> random_values(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<Complex> v(n);
  for (auto& c : v) c = {normal(rng), normal(rng)};
  return v;
}

template <bool Parallel>
void BM_FillGreen(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto left = random_values(n, 1);
  const auto right = random_values(n, 2);
  Eigen::MatrixXcd out;
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::fill_green(left, right, Complex{0.5, 0.1}, out);
    } else {
      kernels::serial::fill_green(left, right, Complex{0.5, 0.1}, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

template <bool Parallel>
void BM_AssembleAlpha(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Geometry1D geom = medium();
  const SpatialGrid1D grid(2.0, n);
  const GreenField g2 = green_1d(geom, 1.0, grid);
  const GreenField g3 = green_1d(geom, 1.2, grid);
  for (auto _ : state) {
    const CouplingTensor alpha = compute_alpha(geom, g2, g3, AlphaOptions{1e-6, !Parallel});
    benchmark::DoNotOptimize(alpha.values.data());
  }
}

template <bool Parallel>
void BM_Contract(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0)) + 1;
  const auto values = random_values(static_cast<std::size_t>(n * n * n), 3);
  const Eigen::Map<const Eigen::MatrixXcd> alpha(values.data(), n, n * n);
  const Eigen::MatrixXcd dense = alpha;
  const auto coefficient = random_values(static_cast<std::size_t>(n * n), 4);
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::omp::contract(dense, coefficient, out);
    } else {
      kernels::serial::contract(dense, coefficient, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_FillGreen<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_FillGreen<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_AssembleAlpha<false>)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_AssembleAlpha<true>)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Contract<false>)->Arg(64)->Arg(128);
BENCHMARK(BM_Contract<true>)->Arg(64)->Arg(128);

BENCHMARK_MAIN();

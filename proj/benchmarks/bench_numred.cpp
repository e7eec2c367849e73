#include <benchmark/benchmark.h>

#include <random>

#include "subalg/monomials.hpp"
#include "subalg/numred.hpp"

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) M(i, j) = u(rng);
  return M;
}

void BM_EnumeratePowerMatrix(benchmark::State& state) {
  const auto vars = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(subalg::enumerate_power_matrix(subalg::PowerVector::uniform(vars, 1)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_EnumeratePowerMatrix)->DenseRange(4, 16, 4);

void BM_BuildDataMatrix(benchmark::State& state) {
  const auto vars = static_cast<std::size_t>(state.range(0));
  const subalg::PowerMatrix K = subalg::enumerate_power_matrix(subalg::PowerVector::uniform(vars, 1));
  const Eigen::MatrixXd samples = random_matrix(static_cast<Eigen::Index>(vars), 200, 1);
  for (auto _ : state) benchmark::DoNotOptimize(subalg::build_data_matrix(samples, K));
}
BENCHMARK(BM_BuildDataMatrix)->DenseRange(4, 12, 4);

// tall V_u: many monomials, few samples
void BM_SvdTruncTall(benchmark::State& state) {
  const auto rows = static_cast<Eigen::Index>(state.range(0));
  const Eigen::MatrixXd Vu = random_matrix(rows, 60, 2);
  const Eigen::MatrixXd Vy = random_matrix(4, 60, 3);
  const auto mode = state.range(1) ? subalg::SvdTruncOutput::MapOnly : subalg::SvdTruncOutput::Full;
  for (auto _ : state) benchmark::DoNotOptimize(subalg::svd_trunc(Vy, Vu, 0.9999, mode));
}
BENCHMARK(BM_SvdTruncTall)->ArgsProduct({{256, 1024, 4096}, {0, 1}})->Unit(benchmark::kMillisecond);

void BM_Mdtrunc(benchmark::State& state) {
  std::vector<double> d(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = 1.0 / static_cast<double>(i + 1);
  for (auto _ : state) benchmark::DoNotOptimize(subalg::mdtrunc(d, 0.99));
}
BENCHMARK(BM_Mdtrunc)->Range(8, 4096);

}  // namespace

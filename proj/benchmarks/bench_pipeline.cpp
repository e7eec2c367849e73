#include <benchmark/benchmark.h>

#include "subalg/generator.hpp"
#include "subalg/model.hpp"
#include "subalg/pipeline.hpp"

namespace {

subalg::GeneratorSpec linear_spec(std::size_t s) {
  subalg::GeneratorSpec spec;
  spec.n = 2;
  spec.d_y = 1;
  Eigen::MatrixXd A(2, 2);
  A << 0.9, 0.1, 0, 0.8;
  spec.f = subalg::MonomialMap(A, subalg::PowerMatrix::from_rows(3, {subalg::PowerVector{1, 0, 0},
                                                                   subalg::PowerVector{0, 1, 0}}));
  spec.h = subalg::MonomialMap(Eigen::MatrixXd::Ones(1, 1), subalg::PowerMatrix::from_rows(2, {subalg::PowerVector{1, 0}}));
  spec.x0_low = Eigen::VectorXd::Constant(2, -1);
  spec.x0_high = Eigen::VectorXd::Constant(2, 1);
  spec.t1 = 30;
  spec.s = s;
  return spec;
}

void BM_IdentifyLinear(benchmark::State& state) {
  const subalg::TimeSeriesSet ts = subalg::generate(linear_spec(40), 1);
  subalg::IdentConfig cfg;
  cfg.r1 = cfg.r2 = 0.9999;
  cfg.r3 = cfg.r4 = 0.001;
  cfg.t_plus_max = cfg.t_minus_max = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(subalg::identify(ts, cfg));
}
BENCHMARK(BM_IdentifyLinear)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_PredictOneStep(benchmark::State& state) {
  const subalg::TimeSeriesSet ts = subalg::generate(linear_spec(static_cast<std::size_t>(state.range(0))), 2);
  subalg::ObserverModel m;
  m.n = 2;
  m.d_y = 1;
  m.f_o = linear_spec(1).f;
  m.h_o = linear_spec(1).h;
  const Eigen::MatrixXd x0 = Eigen::MatrixXd::Zero(2, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(subalg::predict_one_step(m, ts, x0));
}
BENCHMARK(BM_PredictOneStep)->Range(8, 512);

}  // namespace

BENCHMARK_MAIN();

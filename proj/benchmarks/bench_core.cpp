#include <benchmark/benchmark.h>

#include <numbers>
#include <random>
#include <vector>

#include "qtrack/lissajous.hpp"
#include "qtrack/pr_design.hpp"
#include "qtrack/quantizer.hpp"
#include "qtrack/reference.hpp"
#include "qtrack/sim_loop.hpp"
#include "qtrack/state_space.hpp"
#include "qtrack/transfer_function.hpp"

namespace {

using namespace qtrack;

const double kOmega = 60.0 * std::numbers::pi;

TransferFunction stage_plant() {
  return TransferFunction(Polynomial{1.7e7}, Polynomial{0.0, 10.0, 1.0});
}

TransferFunction loop_shape() {
  PRComposition c;
  c.delta0 = 1;
  c.k0 = 10.0;
  c.resonant.push_back({10.0, kOmega});
  c.first_order.push_back({10.0, 10.0});
  return c.compose();
}

void BM_Quantize(benchmark::State& state) {
  const UniformQuantizer q(1e-8);
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> dist(-1e-6, 1e-6);
  std::vector<double> samples(4096);
  for (double& s : samples) s = dist(rng);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(q.quantize(samples[i]));
    i = (i + 1) & 4095;
  }
}
BENCHMARK(BM_Quantize);

void BM_FrequencyEval(benchmark::State& state) {
  const TransferFunction h = loop_shape();
  double w = 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(h.eval_jomega(w));
    w = w < 1e4 ? w * 1.001 : 1.0;
  }
}
BENCHMARK(BM_FrequencyEval);

void BM_RealPartNearPole(benchmark::State& state) {
  const TransferFunction h = loop_shape();
  const double w = kOmega * (1.0 + 1e-6);
  for (auto _ : state) benchmark::DoNotOptimize(h.real_part_jomega(w));
}
BENCHMARK(BM_RealPartNearPole);

void BM_Rk4Step(benchmark::State& state) {
  const StateSpaceModel loop =
      series(realize(synthesize_controller(loop_shape(), stage_plant())),
             realize(stage_plant()));
  StateVector x = StateVector::Zero(loop.order());
  const auto input = [](double) { return 1e-8; };
  double t = 0.0;
  for (auto _ : state) {
    x = rk4_step(loop, x, input, t, 1e-5);
    t += 1e-5;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Rk4Step);

void BM_CrossingScan(benchmark::State& state) {
  const auto [rx, ry] = axis_references({0.0, 0.0, 1e-6, 1e-6, 30, 1.0});
  const UniformQuantizer q(1e-8);
  for (auto _ : state) benchmark::DoNotOptimize(find_crossings(rx, q));
}
BENCHMARK(BM_CrossingScan);

void BM_SimulateAxisMillisecond(benchmark::State& state) {
  const auto [rx, ry] = axis_references({0.0, 0.0, 1e-6, 1e-6, 30, 1.0});
  const LoopConfig cfg{
      .controller = realize(synthesize_controller(loop_shape(), stage_plant())),
      .plant = realize(stage_plant()),
      .quantizer = UniformQuantizer(1e-8),
      .reference = rx,
      .dt = 1e-5,
      .t_end = 1e-3,
      .record_stride = 10};
  for (auto _ : state) benchmark::DoNotOptimize(simulate_axis(cfg));
}
BENCHMARK(BM_SimulateAxisMillisecond);

}  // namespace

BENCHMARK_MAIN();

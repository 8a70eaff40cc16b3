#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "cycleforge/cycle.hpp"
#include "cycleforge/interpolation.hpp"
#include "cycleforge/logistic.hpp"
#include "cycleforge/periodic.hpp"

using namespace cycleforge;

namespace {

NodeSet yearly_nodes(int count) {
  std::vector<double> ts, ys;
  for (int i = 0; i < count; ++i) {
    ts.push_back(2010.0 + 10.0 * i / (count - 1));
    ys.push_back(1.0 + 0.2 * std::sin(0.7 * i));
  }
  return NodeSet::create(ts, ys);
}

CycleModel example_cycle() {
  const PeriodicExtension pe(build_lagrange(yearly_nodes(11)), 2010, 10);
  const TimeWarp warp = auto_window_warp(pe, observed_range(pe), 0.0, 10.0, 2010.0);
  return compose(LogisticModel::create(100, 0.5, 10), warp);
}

}  // namespace

static void BM_LagrangeEval(benchmark::State& state) {
  const Interpolant ip = build_lagrange(yearly_nodes(static_cast<int>(state.range(0))));
  double t = 2010.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ip(t));
    t += 0.0137;
    if (t > 2020.0) t = 2010.0;
  }
}
BENCHMARK(BM_LagrangeEval)->Arg(3)->Arg(11)->Arg(13);

static void BM_CycleEval(benchmark::State& state) {
  const CycleModel cm = example_cycle();
  double t = 2010.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cycle_eval(cm, t));
    t = t >= 2100.0 ? 2010.0 : t + 0.0137;
  }
}
BENCHMARK(BM_CycleEval);

static void BM_SampleCurve(benchmark::State& state) {
  const CycleModel cm = example_cycle();
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_curve(cm, 2010, 2050, n));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SampleCurve)->Arg(801)->Arg(10001);

static void BM_FitLogistic(benchmark::State& state) {
  const LogisticModel truth = LogisticModel::create(100, 0.5, 10);
  std::vector<double> ts, ys;
  for (int i = 0; i < state.range(0); ++i) {
    ts.push_back(20.0 * i / (state.range(0) - 1));
    ys.push_back(logistic_eval(truth, ts.back()) * (1.0 + 0.01 * std::sin(3.0 * i)));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_logistic(ts, ys));
  }
}
BENCHMARK(BM_FitLogistic)->Arg(11)->Arg(50)->Arg(500);
BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <vector>

#include "whs/chained.hpp"
#include "whs/latency_matrix.hpp"
#include "whs/quorum.hpp"
#include "whs/rng.hpp"
#include "whs/sim.hpp"

using namespace whs;

namespace {

LatencyMatrix random_topology(int n) {
  SeededRng rng(1);
  return generate_random_topology(n, 400.0, rng);
}

void BM_TimeToFormQuorum(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(2);
  WeightAssignment w = make_equal_baseline(n);
  std::vector<double> lat(n);
  for (int i = 0; i < n; ++i) lat[i] = rng.uniform(0.0, 300.0);
  const double threshold = 0.7 * w.total();
  for (auto _ : state) {
    benchmark::DoNotOptimize(time_to_form_quorum(lat, w, threshold));
  }
}
BENCHMARK(BM_TimeToFormQuorum)->Arg(5)->Arg(16)->Arg(64);

void BM_PredictRun(benchmark::State& state) {
  const int views = static_cast<int>(state.range(0));
  const LatencyMatrix m = random_topology(5);
  const ProtocolConfig cfg = make_config(1, 1);
  const WeightAssignment w = make_discrete_assignment(cfg, {0, 1});
  const LeaderSchedule rr = LeaderSchedule::round_robin(5, views);
  for (auto _ : state) {
    SeededRng rng(3);
    benchmark::DoNotOptimize(
        predict_run(m, w, cfg.q_v, rr, views, {}, rng).total_latency_ms);
  }
}
BENCHMARK(BM_PredictRun)->Arg(10)->Arg(100)->Arg(1000);

void BM_PredictChainedRun(benchmark::State& state) {
  const int views = static_cast<int>(state.range(0));
  const LatencyMatrix m = random_topology(5);
  const ProtocolConfig cfg = make_config(1, 1);
  const WeightAssignment w = make_discrete_assignment(cfg, {0, 1});
  const LeaderSchedule rr = LeaderSchedule::round_robin(5, views);
  for (auto _ : state) {
    SeededRng rng(3);
    benchmark::DoNotOptimize(
        predict_chained_run(m, w, cfg.q_v, rr, views, {}, rng).total_latency_ms);
  }
}
BENCHMARK(BM_PredictChainedRun)->Arg(10)->Arg(100)->Arg(1000);

void BM_CheckContinuousSafety(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SeededRng rng(4);
  WeightAssignment w{{}, WeightScheme::Continuous};
  for (int i = 0; i < n; ++i) w.weights.push_back(rng.uniform(0.5, 2.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(check_continuous_safety(w, 1).valid);
  }
}
BENCHMARK(BM_CheckContinuousSafety)->Arg(5)->Arg(8)->Arg(10);

}  // namespace

BENCHMARK_MAIN();

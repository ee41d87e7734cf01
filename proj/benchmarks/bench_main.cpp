#include <benchmark/benchmark.h>

#include "tpb/baselines.hpp"
#include "tpb/link.hpp"
#include "tpb/oracles.hpp"
#include "tpb/policy.hpp"
#include "tpb/schedule.hpp"
#include "tpb/theory.hpp"

using namespace tpb;

static void BM_Logistic(benchmark::State& state) {
  double x = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(logistic(x));
    x = x > 5.0 ? -5.0 : x + 1e-3;
  }
}
BENCHMARK(BM_Logistic);

static void BM_LlsInverse(benchmark::State& state) {
  const auto s = Schedule::lls();
  std::uint64_t t = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.g_inverse(t));
    t = t > 1000000 ? 1 : t * 3 + 1;
  }
}
BENCHMARK(BM_LlsInverse);

static void BM_EstimatePreference(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto inst = random_instance(n, n + 4, 1, 1.0);
  const auto probe = choose_probe_set(inst);
  Eigen::VectorXd a(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    a[static_cast<Eigen::Index>(i)] = inst.true_means()[static_cast<Eigen::Index>(probe.indices[i])];
  for (auto _ : state) benchmark::DoNotOptimize(estimate_preference(probe, a));
}
BENCHMARK(BM_EstimatePreference)->Arg(2)->Arg(4)->Arg(8);

static void BM_RunTrialFinite(benchmark::State& state) {
  const auto inst = random_instance(3, 200, 42, 1.0);
  const auto probe = choose_probe_set(inst);
  const auto T = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RewardStream s(seed++);
    benchmark::DoNotOptimize(run_trial(inst, probe, Schedule::linear_over_n(3), T, s).cumulative_regret());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(T));
}
BENCHMARK(BM_RunTrialFinite)->Arg(10000)->Arg(100000);

static void BM_RunTrialSphere(benchmark::State& state) {
  Eigen::VectorXd z(3);
  z << 0.48, 0.6, 0.64;
  const SphereInstance inst(z);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RewardStream s(seed++);
    benchmark::DoNotOptimize(run_trial(inst, Schedule::linear_over_n(3), 100000, s).cumulative_regret());
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_RunTrialSphere);

static void BM_Ucb1(benchmark::State& state) {
  const auto inst = random_instance(3, 200, 42, 1.0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    RewardStream s(seed++);
    benchmark::DoNotOptimize(baseline_ucb1(inst, 100000, s).cumulative_regret());
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_Ucb1);

static void BM_Phase2Exact(benchmark::State& state) {
  const auto inst = random_instance(2, 3, 7, 1.0);
  const auto probe = choose_probe_set(inst);
  const auto l = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(phase2_regret_exact(inst, probe, l));
}
BENCHMARK(BM_Phase2Exact)->Arg(12)->Arg(100);

static void BM_ComputeConstants(benchmark::State& state) {
  const auto inst = random_instance(3, 200, 42, 1.0);
  const auto probe = choose_probe_set(inst);
  for (auto _ : state) benchmark::DoNotOptimize(compute_constants(inst, probe, Schedule::linear_over_n(3)));
}
BENCHMARK(BM_ComputeConstants);
BENCHMARK_MAIN();

#include "tpb/experiment.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "tpb/baselines.hpp"
#include "tpb/rng.hpp"

#ifndef TPB_VERSION
#define TPB_VERSION "unknown"
#endif

namespace tpb {

const char* software_version() { return TPB_VERSION; }

std::size_t Problem::dimension() const { return finite ? finite->dimension() : sphere->dimension(); }

std::optional<std::size_t> Problem::arm_count() const {
  if (finite) return finite->arm_count();
  return std::nullopt;
}

Problem resolve_problem(const ExperimentConfig& c) {
  validate_config(c);
  Problem p;
  p.mode = c.mode;
  if (c.mode == Mode::Finite) {
    if (c.arms) {
      p.finite.emplace(*c.arms, *c.preference, c.weights.value_or(Eigen::VectorXd()));
    } else {
      const auto& g = *c.generator;
      p.finite.emplace(random_instance(g.dimension, g.arm_count, g.seed, g.preference_norm));
    }
    p.probe.emplace(choose_probe_set(*p.finite));
  } else {
    if (c.preference) {
      p.sphere.emplace(*c.preference);
    } else {
      const auto& g = *c.generator;
      p.sphere.emplace(random_sphere_instance(g.dimension, g.seed, g.preference_norm));
    }
  }
  p.schedule = make_schedule(effective_schedule(c), p.dimension());
  return p;
}

bool ExperimentReport::has_violation() const {
  for (const auto& c : curves)
    for (const auto& p : c.points)
      if (p.violation) return true;
  return false;
}

const PolicyCurve* ExperimentReport::curve(const std::string& policy) const {
  for (const auto& c : curves)
    if (c.policy == policy) return &c;
  return nullptr;
}

std::pair<double, double> mean_and_stderr(const std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  if (values.empty()) return {0.0, 0.0};
  double sum = 0.0;
  for (double v : values) sum += v;
  const double mean = sum / n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options) {
  const Problem problem = resolve_problem(config);
  const auto checkpoints = effective_checkpoints(config);
  const std::uint64_t T = config.horizon;

  ExperimentReport report;
  report.mode = config.mode;
  report.n = problem.dimension();
  report.m = problem.arm_count();
  report.trials = config.trials;
  report.horizon = T;
  report.schedule = problem.schedule.describe();
  report.provenance = {config_hash(config), config.base_seed, software_version()};

  // constants first so a degenerate instance fails before any simulation
  std::vector<std::optional<double>> bounds(checkpoints.size());
  if (config.bounds == BoundPolicy::Off) {
    report.bound_status = "off";
  } else if (problem.finite) {
    try {
      report.constants = compute_constants(*problem.finite, *problem.probe, problem.schedule);
      for (std::size_t i = 0; i < checkpoints.size(); ++i)
        bounds[i] = bound_finite(*report.constants, problem.schedule, checkpoints[i]);
      report.bound_status = "ok";
    } catch (const TheoryError& e) {
      if (config.bounds == BoundPolicy::Required) throw;
      report.bound_status = e.what();
    }
  } else {
    report.sphere_constants = compute_sphere_constants(*problem.sphere);
    for (std::size_t i = 0; i < checkpoints.size(); ++i)
      bounds[i] = bound_infinite(*report.sphere_constants, checkpoints[i]);
    report.bound_status = "ok";
  }

  std::vector<std::string> policies{kTwoPhasePolicy};
  for (auto b : config.baselines) policies.push_back(to_string(b));
  const std::size_t P = policies.size();
  const std::size_t C = checkpoints.size();

  // results[trial][policy * C + checkpoint]
  std::vector<std::vector<double>> results(config.trials);
  TrialOptions topts;
  topts.checkpoints = checkpoints;

  auto run_one = [&](std::uint64_t i) {
    const std::uint64_t sub = derive_subseed(config.base_seed, i);
    std::vector<double> row;
    row.reserve(P * C);
    auto append = [&](const RegretTrace& tr) {
      row.insert(row.end(), tr.checkpoint_regret().begin(), tr.checkpoint_regret().end());
    };
    {
      RewardStream s(sub);
      if (problem.finite) append(run_trial(*problem.finite, *problem.probe, problem.schedule, T, s, topts));
      else append(run_trial(*problem.sphere, problem.schedule, T, s, topts));
    }
    for (auto b : config.baselines) {
      RewardStream s(sub);
      append(b == Baseline::Ucb1 ? baseline_ucb1(*problem.finite, T, s, topts)
                                 : baseline_random(*problem.finite, T, s, topts));
    }
    results[i] = std::move(row);
  };

  const unsigned jobs =
      static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.jobs, config.trials)));
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> done{0};
  std::mutex err_mutex;
  std::exception_ptr error;
  std::mutex progress_mutex;

  auto worker = [&] {
    for (;;) {
      const std::uint64_t i = next.fetch_add(1);
      if (i >= config.trials) return;
      {
        std::lock_guard lock(err_mutex);
        if (error) return;
      }
      try {
        run_one(i);
      } catch (...) {
        std::lock_guard lock(err_mutex);
        if (!error) error = std::current_exception();
        return;
      }
      const auto d = done.fetch_add(1) + 1;
      if (options.progress) {
        std::lock_guard lock(progress_mutex);
        options.progress(d, config.trials);
      }
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<double> column(config.trials);
  for (std::size_t p = 0; p < P; ++p) {
    PolicyCurve curve{policies[p], {}};
    for (std::size_t c = 0; c < C; ++c) {
      for (std::uint64_t i = 0; i < config.trials; ++i) column[i] = results[i][p * C + c];
      auto [mean, se] = mean_and_stderr(column);
      CheckpointStat stat{checkpoints[c], mean, se, std::nullopt, false};
      if (p == 0 && bounds[c]) {
        stat.bound = bounds[c];
        stat.violation = mean > *bounds[c];
      }
      curve.points.push_back(stat);
    }
    report.curves.push_back(std::move(curve));
  }
  return report;
}

}  // namespace tpb

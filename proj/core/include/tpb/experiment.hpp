#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tpb/config.hpp"
#include "tpb/instance.hpp"
#include "tpb/policy.hpp"
#include "tpb/schedule.hpp"
#include "tpb/theory.hpp"

namespace tpb {

inline constexpr const char* kTwoPhasePolicy = "two_phase";

/// Instance, probe set and schedule resolved from a config.
struct Problem {
  Mode mode = Mode::Finite;
  std::optional<BanditInstance> finite;
  std::optional<SphereInstance> sphere;
  std::optional<ProbeSet> probe;  ///< finite mode only
  Schedule schedule = Schedule::lls();

  std::size_t dimension() const;
  /// Arm count, absent in sphere mode.
  std::optional<std::size_t> arm_count() const;
};

Problem resolve_problem(const ExperimentConfig& config);

struct CheckpointStat {
  std::uint64_t t = 0;
  double mean = 0.0;
  double stderr_ = 0.0;        ///< sample std / sqrt(trials); 0 for one trial
  std::optional<double> bound;  ///< two-phase only
  bool violation = false;       ///< mean > bound
};

struct PolicyCurve {
  std::string policy;
  std::vector<CheckpointStat> points;
};

struct Provenance {
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version;
};

struct ExperimentReport {
  Mode mode = Mode::Finite;
  std::size_t n = 0;
  std::optional<std::size_t> m;
  std::uint64_t trials = 0;
  std::uint64_t horizon = 0;
  std::string schedule;
  std::vector<PolicyCurve> curves;  ///< two-phase first, then baselines in config order
  std::optional<TheoryConstants> constants;
  std::optional<SphereConstants> sphere_constants;
  /// "ok", "off", or the theory error message when bounds = optional.
  std::string bound_status;
  Provenance provenance;

  bool has_violation() const;
  const PolicyCurve* curve(const std::string& policy) const;
};

struct RunOptions {
  /// Worker threads; results never depend on this.
  unsigned jobs = 1;
  /// Called after each finished trial with the number done so far.
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

/// Runs `trials` independent trials. Trial i uses reward stream
/// derive_subseed(seed, i) for every policy, so policies see common random
/// numbers. Throws TheoryError when bounds = required and the constants are
/// undefined for the instance or schedule.
ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// Mean and standard error sample std / sqrt(N) of `values`, summed in index order.
std::pair<double, double> mean_and_stderr(const std::vector<double>& values);

const char* software_version();

}  // namespace tpb

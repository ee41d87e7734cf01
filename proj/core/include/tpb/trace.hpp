#pragma once

#include <cstdint>
#include <vector>

namespace tpb {

enum class Phase : std::uint8_t { Explore = 1, Exploit = 2 };

struct StepRecord {
  std::uint64_t t = 0;
  /// Arm index; for sphere Phase-2 pulls (continuous arms) this is -1.
  std::int64_t arm = -1;
  Phase phase = Phase::Explore;
  double reward = 0.0;
  double pseudo_regret = 0.0;
};

struct EpochRecord {
  std::uint64_t epoch = 0;
  std::uint64_t start_t = 0;
  std::uint64_t explore_pulls = 0;
  std::uint64_t exploit_pulls = 0;
  bool good = false;
  std::int64_t chosen_arm = -1;
  double exploit_regret_per_step = 0.0;
};

/// Per-trial record of pulls and pseudo-regret. Per-step detail is kept only
/// when requested; cumulative totals, per-epoch aggregates and checkpoint
/// snapshots are always maintained so long horizons stay memory-light.
class RegretTrace {
 public:
  /// `checkpoints` must be strictly increasing and lie in [1, horizon].
  explicit RegretTrace(std::uint64_t horizon, std::vector<std::uint64_t> checkpoints = {},
                       bool keep_steps = false);

  /// Appends timestep t, which must equal length() + 1 and not exceed the
  /// horizon. pseudo_regret must be finite and non-negative.
  void record(std::uint64_t t, std::int64_t arm, Phase phase, double reward, double pseudo_regret);

  /// Marks the start of an epoch at timestep length() + 1.
  void begin_epoch(std::uint64_t epoch);
  /// Fills the good flag and chosen arm of the current epoch.
  void annotate_epoch(bool good, std::int64_t chosen_arm, double exploit_regret_per_step);

  std::uint64_t horizon() const { return horizon_; }
  std::uint64_t length() const { return length_; }
  bool complete() const { return length_ == horizon_; }

  double phase1_regret() const { return phase1_regret_; }
  double phase2_regret() const { return phase2_regret_; }
  /// R_T = R_{1,T} + R_{2,T}
  double cumulative_regret() const { return phase1_regret_ + phase2_regret_; }
  double total_reward() const { return total_reward_; }
  std::uint64_t phase1_pulls() const { return phase1_pulls_; }
  std::uint64_t phase2_pulls() const { return phase2_pulls_; }

  const std::vector<std::uint64_t>& checkpoints() const { return checkpoints_; }
  /// Cumulative regret at each checkpoint reached so far.
  const std::vector<double>& checkpoint_regret() const { return checkpoint_regret_; }

  const std::vector<EpochRecord>& epochs() const { return epochs_; }
  bool keeps_steps() const { return keep_steps_; }
  const std::vector<StepRecord>& steps() const { return steps_; }

 private:
  std::uint64_t horizon_;
  std::vector<std::uint64_t> checkpoints_;
  bool keep_steps_;
  std::uint64_t length_ = 0;
  double phase1_regret_ = 0.0;
  double phase2_regret_ = 0.0;
  double total_reward_ = 0.0;
  std::uint64_t phase1_pulls_ = 0;
  std::uint64_t phase2_pulls_ = 0;
  std::size_t next_checkpoint_ = 0;
  std::vector<double> checkpoint_regret_;
  std::vector<EpochRecord> epochs_;
  std::vector<StepRecord> steps_;
};

}  // namespace tpb

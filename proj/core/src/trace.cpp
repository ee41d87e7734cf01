#include "tpb/trace.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tpb {

RegretTrace::RegretTrace(std::uint64_t horizon, std::vector<std::uint64_t> checkpoints,
                         bool keep_steps)
    : horizon_(horizon), checkpoints_(std::move(checkpoints)), keep_steps_(keep_steps) {
  if (horizon_ == 0) throw std::invalid_argument("trace: horizon must be >= 1");
  for (std::size_t i = 0; i < checkpoints_.size(); ++i) {
    if (checkpoints_[i] == 0 || checkpoints_[i] > horizon_) {
      throw std::invalid_argument("trace: checkpoint " + std::to_string(checkpoints_[i]) +
                                  " outside [1, horizon]");
    }
    if (i > 0 && checkpoints_[i] <= checkpoints_[i - 1]) {
      throw std::invalid_argument("trace: checkpoints must be strictly increasing");
    }
  }
  checkpoint_regret_.reserve(checkpoints_.size());
  if (keep_steps_) steps_.reserve(static_cast<std::size_t>(horizon_));
}

void RegretTrace::record(std::uint64_t t, std::int64_t arm, Phase phase, double reward,
                         double pseudo_regret) {
  if (t != length_ + 1) {
    throw std::invalid_argument("trace: out-of-order timestep " + std::to_string(t) +
                                " (expected " + std::to_string(length_ + 1) + ")");
  }
  if (t > horizon_) throw std::out_of_range("trace: timestep beyond horizon");
  if (!std::isfinite(pseudo_regret) || pseudo_regret < 0.0) {
    throw std::invalid_argument("trace: pseudo-regret must be finite and non-negative");
  }
  length_ = t;
  total_reward_ += reward;
  if (phase == Phase::Explore) {
    phase1_regret_ += pseudo_regret;
    ++phase1_pulls_;
    if (!epochs_.empty()) ++epochs_.back().explore_pulls;
  } else {
    phase2_regret_ += pseudo_regret;
    ++phase2_pulls_;
    if (!epochs_.empty()) ++epochs_.back().exploit_pulls;
  }
  if (keep_steps_) steps_.push_back({t, arm, phase, reward, pseudo_regret});
  if (next_checkpoint_ < checkpoints_.size() && checkpoints_[next_checkpoint_] == t) {
    checkpoint_regret_.push_back(cumulative_regret());
    ++next_checkpoint_;
  }
}

void RegretTrace::begin_epoch(std::uint64_t epoch) {
  EpochRecord rec;
  rec.epoch = epoch;
  rec.start_t = length_ + 1;
  epochs_.push_back(rec);
}

void RegretTrace::annotate_epoch(bool good, std::int64_t chosen_arm, double exploit_regret_per_step) {
  if (epochs_.empty()) throw std::logic_error("trace: annotate_epoch before begin_epoch");
  auto& rec = epochs_.back();
  rec.good = good;
  rec.chosen_arm = chosen_arm;
  rec.exploit_regret_per_step = exploit_regret_per_step;
}

}  // namespace tpb

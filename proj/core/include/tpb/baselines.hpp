#pragma once

#include <cstdint>

#include "tpb/instance.hpp"
#include "tpb/policy.hpp"
#include "tpb/rng.hpp"
#include "tpb/trace.hpp"

namespace tpb {

/// UCB1 on rewards normalized by the largest weight: pull every arm once,
/// then argmax mean_j + sqrt(2 ln t / n_j). Arms are treated as independent.
/// All pulls are recorded as Phase 2 (there is no exploration schedule).
RegretTrace baseline_ucb1(const BanditInstance& instance, std::uint64_t horizon, RewardStream& stream,
                          const TrialOptions& options = {});

/// Uniformly random arm each step. Arm choices come from a private stream
/// seeded from stream.seed() so the reward stream still sees one draw per pull.
RegretTrace baseline_random(const BanditInstance& instance, std::uint64_t horizon, RewardStream& stream,
                            const TrialOptions& options = {});

/// Seed of the arm-choice stream used by baseline_random.
constexpr std::uint64_t random_policy_seed(std::uint64_t reward_seed) {
  return reward_seed ^ 0xD1B54A32D192ED03ULL;
}

}  // namespace tpb

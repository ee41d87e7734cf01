#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tpb/baselines.hpp"

using namespace tpb;

TEST(Ucb1, PullsEveryArmOnceFirst) {
  const auto inst = random_instance(2, 6, 3, 1.0);
  RewardStream s(1);
  TrialOptions opts;
  opts.keep_steps = true;
  const auto tr = baseline_ucb1(inst, 50, s, opts);
  for (std::size_t j = 0; j < 6; ++j) EXPECT_EQ(tr.steps()[j].arm, static_cast<std::int64_t>(j));
  EXPECT_EQ(tr.length(), 50u);
  EXPECT_EQ(s.draws(), 50u);
  EXPECT_EQ(tr.phase1_pulls(), 0u);
}

TEST(Ucb1, ConcentratesOnBestArm) {
  const auto inst = fixtures::small_instance();
  RewardStream s(4);
  TrialOptions opts;
  opts.keep_steps = true;
  const auto tr = baseline_ucb1(inst, 50000, s, opts);
  std::uint64_t best = 0;
  for (const auto& st : tr.steps()) best += inst.is_best(static_cast<std::size_t>(st.arm));
  EXPECT_GT(best, 30000u);
  EXPECT_LT(tr.cumulative_regret(), 0.05 * 50000);
}

TEST(Ucb1, DeterministicForSeed) {
  const auto inst = fixtures::weighted_instance();
  RewardStream a(8), b(8);
  EXPECT_EQ(baseline_ucb1(inst, 3000, a).cumulative_regret(), baseline_ucb1(inst, 3000, b).cumulative_regret());
}

TEST(RandomPolicy, RegretNearAverageGap) {
  const auto inst = fixtures::small_instance();
  RewardStream s(6);
  const auto tr = baseline_random(inst, 60000, s);
  EXPECT_NEAR(tr.cumulative_regret() / 60000.0, inst.regrets().mean(), 0.01);
  EXPECT_EQ(s.draws(), 60000u);
}

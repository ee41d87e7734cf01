#include <stdexcept>

#include <gtest/gtest.h>

#include "tpb/trace.hpp"

using namespace tpb;

TEST(RegretTrace, PhaseSplitSumsToTotal) {
  RegretTrace tr(6, {2, 5, 6}, true);
  tr.begin_epoch(1);
  tr.record(1, 0, Phase::Explore, 1.0, 0.1);
  tr.record(2, 1, Phase::Explore, 0.0, 0.2);
  tr.annotate_epoch(true, 2, 0.05);
  tr.record(3, 2, Phase::Exploit, 1.0, 0.05);
  tr.record(4, 2, Phase::Exploit, 1.0, 0.05);
  tr.begin_epoch(2);
  tr.record(5, 0, Phase::Explore, 0.0, 0.1);
  tr.record(6, 1, Phase::Explore, 1.0, 0.2);
  EXPECT_TRUE(tr.complete());
  EXPECT_DOUBLE_EQ(tr.phase1_regret(), 0.6);
  EXPECT_DOUBLE_EQ(tr.phase2_regret(), 0.1);
  EXPECT_DOUBLE_EQ(tr.cumulative_regret(), tr.phase1_regret() + tr.phase2_regret());
  EXPECT_DOUBLE_EQ(tr.total_reward(), 4.0);
  ASSERT_EQ(tr.checkpoint_regret().size(), 3u);
  EXPECT_DOUBLE_EQ(tr.checkpoint_regret()[0], 0.3);
  EXPECT_DOUBLE_EQ(tr.checkpoint_regret()[1], 0.5);
  EXPECT_DOUBLE_EQ(tr.checkpoint_regret()[2], 0.7);
  ASSERT_EQ(tr.epochs().size(), 2u);
  EXPECT_EQ(tr.epochs()[0].explore_pulls, 2u);
  EXPECT_EQ(tr.epochs()[0].exploit_pulls, 2u);
  EXPECT_EQ(tr.epochs()[1].start_t, 5u);
  EXPECT_EQ(tr.epochs()[0].chosen_arm, 2);
  EXPECT_EQ(tr.steps().size(), 6u);
}

TEST(RegretTrace, RejectsOutOfOrderAndNegative) {
  RegretTrace tr(3);
  EXPECT_THROW(tr.record(2, 0, Phase::Explore, 0, 0), std::invalid_argument);
  tr.record(1, 0, Phase::Explore, 0, 0);
  EXPECT_THROW(tr.record(1, 0, Phase::Explore, 0, 0), std::invalid_argument);
  EXPECT_THROW(tr.record(2, 0, Phase::Explore, 0, -1e-3), std::invalid_argument);
  tr.record(2, 0, Phase::Explore, 0, 0);
  tr.record(3, 0, Phase::Explore, 0, 0);
  EXPECT_THROW(tr.record(4, 0, Phase::Explore, 0, 0), std::out_of_range);
}

TEST(RegretTrace, ValidatesCheckpoints) {
  EXPECT_THROW(RegretTrace(5, {0}), std::invalid_argument);
  EXPECT_THROW(RegretTrace(5, {6}), std::invalid_argument);
  EXPECT_THROW(RegretTrace(5, {3, 3}), std::invalid_argument);
  EXPECT_THROW(RegretTrace(0), std::invalid_argument);
  EXPECT_THROW(RegretTrace(5).annotate_epoch(true, 0, 0), std::logic_error);
}

TEST(RegretTrace, StepsOnlyWhenRequested) {
  RegretTrace tr(2);
  tr.record(1, 0, Phase::Exploit, 1, 0);
  EXPECT_TRUE(tr.steps().empty());
  EXPECT_EQ(tr.phase2_pulls(), 1u);
}

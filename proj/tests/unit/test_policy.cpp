#include <cmath>
#include <random>
#include <stdexcept>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tpb/link.hpp"
#include "tpb/policy.hpp"

using namespace tpb;

namespace {

Eigen::VectorXd exact_probe_means(const BanditInstance& inst, const ProbeSet& probe) {
  Eigen::VectorXd a(static_cast<Eigen::Index>(probe.size()));
  for (std::size_t i = 0; i < probe.size(); ++i)
    a[static_cast<Eigen::Index>(i)] = inst.true_means()[static_cast<Eigen::Index>(probe.indices[i])];
  return a;
}

}  // namespace

TEST(ProbeSet, GreedyPivotingPicksLargestResidual) {
  Eigen::MatrixXd U(2, 4);
  U << 1, 3, 0, 1,
       0, 0, 1, 1;
  BanditInstance inst(U, Eigen::VectorXd::Constant(2, 0.1));
  const auto p = choose_probe_set(inst);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.indices[0], 1u);  // longest column
  EXPECT_EQ(p.indices[1], 2u);  // residual of (0,1) and (1,1) tie at 1; lowest index
}

TEST(ProbeSet, NeverPicksDuplicateColumns) {
  Eigen::MatrixXd U(2, 3);
  U << 2, 2, 0,
       1, 1, 1;
  BanditInstance inst(U, Eigen::VectorXd::Constant(2, 0.1));
  const auto p = choose_probe_set(inst);
  EXPECT_NE(p.indices[0] == 0 || p.indices[0] == 1, p.indices[1] == 0 || p.indices[1] == 1);
}

TEST(ProbeSet, RejectsRankDeficientSelection) {
  Eigen::MatrixXd U(2, 3);
  U << 1, 2, 0,
       1, 2, 1;
  EXPECT_THROW(make_probe_set(U, {0, 1}), std::invalid_argument);
  EXPECT_THROW(make_probe_set(U, {0}), std::invalid_argument);
  EXPECT_NO_THROW(make_probe_set(U, {0, 2}));
}

TEST(EstimatePreference, ExactMeansRecoverPreference) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const std::size_t n = 1 + seed % 6;
    const auto inst = random_instance(n, n + 3, seed, 2.0);
    const auto probe = choose_probe_set(inst);
    const auto est = estimate_preference(probe, exact_probe_means(inst, probe));
    ASSERT_TRUE(est.good);
    EXPECT_LT((est.z - inst.preference()).lpNorm<Eigen::Infinity>(), 1e-8) << seed;
  }
}

TEST(EstimatePreference, BoundaryEstimateIsBadEpoch) {
  const auto probe = identity_probe_set(3);
  Eigen::VectorXd a(3);
  a << 0.5, 1.0, 0.3;
  auto est = estimate_preference(probe, a);
  EXPECT_FALSE(est.good);
  EXPECT_EQ(est.z, Eigen::VectorXd::Zero(3));
  a << 0.5, 0.2, 0.0;
  EXPECT_FALSE(estimate_preference(probe, a).good);
  a << 0.5, 0.2, 0.7;
  est = estimate_preference(probe, a);
  EXPECT_TRUE(est.good);
  EXPECT_NEAR(est.z[1], logit(0.2), 1e-15);
}

TEST(SelectArm, UniformWeightsArgmaxQualityLowestTie) {
  const auto inst = fixtures::small_instance();
  Eigen::VectorXd z(2);
  z << 1.0, 0.0;
  EXPECT_EQ(select_arm_finite(inst, z), 0u);
  z << 0.0, 1.0;
  EXPECT_EQ(select_arm_finite(inst, z), 1u);
  EXPECT_EQ(select_arm_finite(inst, Eigen::VectorXd::Zero(2)), 0u);
}

TEST(SelectArm, WeightedUsesExpectedReward) {
  const auto inst = fixtures::weighted_instance();
  EXPECT_EQ(select_arm_finite(inst, inst.preference()), 2u);
  Eigen::VectorXd z(2);
  z << 3.0, 0.0;  // arm 0: 0.1 f(6) ~ 0.0998 vs arm 2: f(1.5) ~ 0.818
  EXPECT_EQ(select_arm_finite(inst, z), 2u);
}

TEST(SelectArm, SphereNormalizesOrFallsBack) {
  Eigen::VectorXd z(3);
  z << 0, 3, 4;
  EXPECT_NEAR((select_arm_sphere(z) - z / 5.0).norm(), 0.0, 1e-15);
  const auto e = select_arm_sphere(Eigen::VectorXd::Zero(3));
  EXPECT_EQ(e, Eigen::Vector3d(1, 0, 0));
}

TEST(RunTrial, EpochStructureLinearSchedule) {
  // n = 2, g(l) = floor(l/2): epoch starts 1, 3, 6, 9 with T = 10.
  const auto inst = fixtures::small_instance();
  RewardStream s(3);
  TrialOptions opts;
  opts.keep_steps = true;
  const auto tr = run_trial(inst, Schedule::linear_over_n(2), 10, s, opts);
  ASSERT_EQ(tr.length(), 10u);
  ASSERT_EQ(tr.epochs().size(), 4u);
  EXPECT_EQ(tr.epochs()[0].start_t, 1u);
  EXPECT_EQ(tr.epochs()[1].start_t, 3u);
  EXPECT_EQ(tr.epochs()[2].start_t, 6u);
  EXPECT_EQ(tr.epochs()[3].start_t, 9u);
  EXPECT_EQ(tr.epochs()[0].exploit_pulls, 0u);
  EXPECT_EQ(tr.epochs()[1].exploit_pulls, 1u);
  EXPECT_EQ(s.draws(), 10u);
}

TEST(RunTrial, TruncatesExactlyAtHorizonForEveryT) {
  const auto inst = fixtures::small_instance();
  for (std::uint64_t T = 1; T <= 60; ++T) {
    RewardStream s(T);
    const auto tr = run_trial(inst, Schedule::lls(), T, s);
    EXPECT_EQ(tr.length(), T);
    EXPECT_EQ(tr.phase1_pulls() + tr.phase2_pulls(), T);
    EXPECT_EQ(s.draws(), T);
  }
}

TEST(RunTrial, ReplayIsBitExact) {
  const auto inst = random_instance(3, 10, 4, 1.0);
  RewardStream a(99), b(99);
  TrialOptions opts;
  opts.keep_steps = true;
  const auto ta = run_trial(inst, Schedule::lls(), 5000, a, opts);
  const auto tb = run_trial(inst, Schedule::lls(), 5000, b, opts);
  EXPECT_EQ(ta.cumulative_regret(), tb.cumulative_regret());
  for (std::size_t i = 0; i < ta.steps().size(); ++i) ASSERT_EQ(ta.steps()[i].arm, tb.steps()[i].arm);
}

TEST(RunTrial, PerfectInformationEstimatorPaysOnlyPhaseOne) {
  const auto inst = fixtures::small_instance();
  const auto probe = choose_probe_set(inst);
  const Eigen::VectorXd exact = exact_probe_means(inst, probe);
  TrialOptions opts;
  opts.estimator = [&](const std::vector<std::uint64_t>&, std::uint64_t) { return exact; };
  RewardStream s(1);
  const auto tr = run_trial(inst, probe, Schedule::lls(), 20000, s, opts);
  EXPECT_EQ(tr.phase2_regret(), 0.0);
  EXPECT_GT(tr.phase1_regret(), 0.0);
  for (const auto& e : tr.epochs()) EXPECT_TRUE(e.good);
}

TEST(RunTrial, ProbeArmsPulledOncePerEpochInOrder) {
  const auto inst = random_instance(3, 7, 12, 1.0);
  const auto probe = choose_probe_set(inst);
  RewardStream s(2);
  TrialOptions opts;
  opts.keep_steps = true;
  const auto tr = run_trial(inst, probe, Schedule::lls(), 3000, s, opts);
  for (const auto& e : tr.epochs()) {
    for (std::size_t i = 0; i < 3 && e.start_t + i <= tr.length(); ++i) {
      const auto& st = tr.steps()[e.start_t - 1 + i];
      EXPECT_EQ(st.phase, Phase::Explore);
      EXPECT_EQ(st.arm, static_cast<std::int64_t>(probe.indices[i]));
    }
  }
}

TEST(RunTrial, SphereRegretMatchesChosenDirection) {
  Eigen::VectorXd z(3);
  z << 0.48, 0.6, 0.64;
  SphereInstance inst(z);
  RewardStream s(5);
  TrialOptions opts;
  opts.keep_steps = true;
  const auto tr = run_trial(inst, Schedule::linear_over_n(3), 4000, s, opts);
  EXPECT_EQ(tr.length(), 4000u);
  EXPECT_EQ(s.draws(), 4000u);
  for (const auto& st : tr.steps()) {
    EXPECT_GE(st.pseudo_regret, 0.0);
    EXPECT_LE(st.pseudo_regret, logistic(1.0) - logistic(-1.0));
  }
  // late epochs should be close to z*/||z*||
  EXPECT_LT(tr.epochs().back().exploit_regret_per_step, 0.01);
}
